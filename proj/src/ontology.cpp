#include "annolattice/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace annolattice {

namespace {

void sort_unique(std::vector<ConceptId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool trimmed_nonempty(const std::string& s) {
    if (s.empty()) return false;
    return !std::isspace(static_cast<unsigned char>(s.front())) &&
           !std::isspace(static_cast<unsigned char>(s.back()));
}

}  // namespace

Taxonomy Taxonomy::from_concepts(std::vector<OntologyConcept> concepts) {
    Taxonomy t;
    t.concepts_ = std::move(concepts);
    for (std::size_t i = 0; i < t.concepts_.size(); ++i) {
        auto& c = t.concepts_[i];
        if (!trimmed_nonempty(c.id))
            throw TaxonomyError("invalid concept id: '" + c.id + "'");
        if (c.label.empty()) c.label = c.id;
        sort_unique(c.parents);
        if (!t.index_.emplace(c.id, i).second)
            throw TaxonomyError("duplicate concept id: " + c.id);
    }
    t.children_.resize(t.concepts_.size());
    for (const auto& c : t.concepts_) {
        for (const auto& p : c.parents) {
            auto it = t.index_.find(p);
            if (it == t.index_.end())
                throw TaxonomyError("undeclared parent '" + p +
                                    "' of concept '" + c.id + "'");
            t.children_[it->second].push_back(c.id);
        }
    }
    for (auto& ch : t.children_) sort_unique(ch);
    return t;
}

std::size_t Taxonomy::index_of(const ConceptId& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw TaxonomyError("unknown concept id: " + id);
    return it->second;
}

const OntologyConcept& Taxonomy::at(const ConceptId& id) const {
    return concepts_[index_of(id)];
}

std::vector<ConceptId> Taxonomy::roots() const {
    std::vector<ConceptId> out;
    for (const auto& c : concepts_)
        if (c.parents.empty()) out.push_back(c.id);
    std::sort(out.begin(), out.end());
    return out;
}

const std::vector<ConceptId>& Taxonomy::children(const ConceptId& id) const {
    return children_[index_of(id)];
}

std::vector<ConceptId> Taxonomy::annotation_types() const {
    std::vector<ConceptId> out;
    for (const auto& c : concepts_)
        if (c.kind == ConceptKind::annotation_type) out.push_back(c.id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ConceptId> Taxonomy::up_closure(std::span<const ConceptId> ids) const {
    std::set<ConceptId> seen;
    std::vector<ConceptId> work;
    for (const auto& id : ids) {
        index_of(id);  // unknown ids throw
        if (seen.insert(id).second) work.push_back(id);
    }
    while (!work.empty()) {
        ConceptId cur = std::move(work.back());
        work.pop_back();
        for (const auto& p : concepts_[index_of(cur)].parents)
            if (seen.insert(p).second) work.push_back(p);
    }
    return {seen.begin(), seen.end()};
}

bool Taxonomy::is_strict_ancestor(const ConceptId& ancestor,
                                  const ConceptId& descendant) const {
    index_of(ancestor);
    if (ancestor == descendant) return false;
    std::vector<ConceptId> one{descendant};
    auto closure = up_closure(one);
    return std::binary_search(closure.begin(), closure.end(), ancestor);
}

bool Taxonomy::related(const ConceptId& a, const ConceptId& b) const {
    return is_strict_ancestor(a, b) || is_strict_ancestor(b, a);
}

std::vector<Violation> Taxonomy::validate() const {
    std::vector<Violation> out;

    // Cycles: SCCs of the parent relation (iterative Tarjan); every SCC of
    // size > 1, or single node with a self-edge, is one violation.
    const std::size_t n = concepts_.size();
    std::vector<int> idx(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    int counter = 0;
    std::vector<std::vector<ConceptId>> sccs;

    struct Frame {
        std::size_t v;
        std::size_t next_parent;
    };
    for (std::size_t start = 0; start < n; ++start) {
        if (idx[start] != -1) continue;
        std::vector<Frame> call{{start, 0}};
        idx[start] = low[start] = counter++;
        stack.push_back(start);
        on_stack[start] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& parents = concepts_[f.v].parents;
            if (f.next_parent < parents.size()) {
                std::size_t w = index_.at(parents[f.next_parent++]);
                if (idx[w] == -1) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], idx[w]);
                }
            } else {
                if (low[f.v] == idx[f.v]) {
                    std::vector<ConceptId> scc;
                    std::size_t w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        scc.push_back(concepts_[w].id);
                    } while (w != f.v);
                    bool self_loop =
                        scc.size() == 1 &&
                        std::binary_search(concepts_[f.v].parents.begin(),
                                           concepts_[f.v].parents.end(),
                                           concepts_[f.v].id);
                    if (scc.size() > 1 || self_loop) {
                        std::sort(scc.begin(), scc.end());
                        sccs.push_back(std::move(scc));
                    }
                }
                std::size_t v = f.v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    std::sort(sccs.begin(), sccs.end());
    for (auto& scc : sccs) {
        std::string msg = "cycle through {";
        for (std::size_t i = 0; i < scc.size(); ++i)
            msg += (i ? ", " : "") + scc[i];
        msg += "}";
        out.push_back({Violation::Kind::cycle, Violation::Severity::error,
                       std::move(scc), std::move(msg)});
    }

    // Leaf rule: annotation types must not have children.
    std::map<ConceptId, std::vector<ConceptId>> offenders;
    for (std::size_t i = 0; i < n; ++i) {
        if (concepts_[i].kind == ConceptKind::annotation_type &&
            !children_[i].empty())
            offenders[concepts_[i].id] = children_[i];
    }
    for (const auto& [id, kids] : offenders) {
        std::string msg = "annotation type '" + id + "' has children: ";
        for (std::size_t i = 0; i < kids.size(); ++i)
            msg += (i ? ", " : "") + kids[i];
        out.push_back({Violation::Kind::type_with_children,
                       Violation::Severity::error,
                       {id},
                       std::move(msg)});
    }

    // Categories from which no annotation type is reachable (warning).
    std::vector<ConceptId> barren;
    for (std::size_t i = 0; i < n; ++i) {
        if (concepts_[i].kind != ConceptKind::category) continue;
        std::set<std::size_t> seen{i};
        std::vector<std::size_t> work{i};
        bool found = false;
        while (!work.empty() && !found) {
            std::size_t v = work.back();
            work.pop_back();
            for (const auto& ch : children_[v]) {
                std::size_t w = index_.at(ch);
                if (concepts_[w].kind == ConceptKind::annotation_type) {
                    found = true;
                    break;
                }
                if (seen.insert(w).second) work.push_back(w);
            }
        }
        if (!found) barren.push_back(concepts_[i].id);
    }
    std::sort(barren.begin(), barren.end());
    for (const auto& id : barren)
        out.push_back({Violation::Kind::category_without_types,
                       Violation::Severity::warning,
                       {id},
                       "category '" + id + "' has no annotation type descendant"});

    // Duplicate labels (warning), one violation per label.
    std::map<std::string, std::vector<ConceptId>> by_label;
    for (const auto& c : concepts_) by_label[c.label].push_back(c.id);
    for (auto& [label, ids] : by_label) {
        if (ids.size() < 2) continue;
        std::sort(ids.begin(), ids.end());
        out.push_back({Violation::Kind::duplicate_label,
                       Violation::Severity::warning, ids,
                       "label '" + label + "' is shared by " +
                           std::to_string(ids.size()) + " concepts"});
    }
    return out;
}

std::vector<ConceptId> Taxonomy::topo_lex_order() const {
    // Kahn with a sorted frontier: parents precede children, ties by id.
    std::map<ConceptId, std::size_t> pending;
    std::set<ConceptId> frontier;
    for (const auto& c : concepts_) {
        if (c.parents.empty())
            frontier.insert(c.id);
        else
            pending[c.id] = c.parents.size();
    }
    std::vector<ConceptId> order;
    order.reserve(concepts_.size());
    while (!frontier.empty()) {
        ConceptId cur = *frontier.begin();
        frontier.erase(frontier.begin());
        order.push_back(cur);
        for (const auto& ch : children_[index_.at(cur)]) {
            auto it = pending.find(ch);
            if (it != pending.end() && --it->second == 0) {
                pending.erase(it);
                frontier.insert(ch);
            }
        }
    }
    if (order.size() != concepts_.size())
        throw TaxonomyError("taxonomy parent relation is cyclic");
    return order;
}

namespace {

void check_acyclic(const Taxonomy& t) {
    t.topo_lex_order();  // throws on cycles
}

Taxonomy apply_add(const Taxonomy& t, const AddConcept& e) {
    if (t.contains(e.concept.id))
        throw TaxonomyError("concept already exists: " + e.concept.id);
    for (const auto& p : e.concept.parents)
        if (!t.contains(p))
            throw TaxonomyError("unknown parent: " + p);
    auto concepts = t.concepts();
    concepts.push_back(e.concept);
    Taxonomy out = Taxonomy::from_concepts(std::move(concepts));
    check_acyclic(out);
    return out;
}

Taxonomy apply_remove(const Taxonomy& t, const RemoveConcept& e) {
    const auto& victim = t.at(e.target);  // throws on unknown target
    std::vector<OntologyConcept> concepts;
    concepts.reserve(t.size() - 1);
    for (const auto& c : t.concepts()) {
        if (c.id == e.target) continue;
        OntologyConcept copy = c;
        auto it = std::find(copy.parents.begin(), copy.parents.end(), e.target);
        if (it != copy.parents.end()) {
            copy.parents.erase(it);
            // reattach orphaned children to the removed concept's parents
            for (const auto& gp : victim.parents)
                if (gp != copy.id) copy.parents.push_back(gp);
        }
        concepts.push_back(std::move(copy));
    }
    Taxonomy out = Taxonomy::from_concepts(std::move(concepts));
    check_acyclic(out);
    return out;
}

Taxonomy apply_rename(const Taxonomy& t, const RenameConcept& e) {
    t.at(e.target);
    auto concepts = t.concepts();
    for (auto& c : concepts)
        if (c.id == e.target) c.label = e.new_label;
    return Taxonomy::from_concepts(std::move(concepts));
}

Taxonomy apply_merge(const Taxonomy& t, const MergeConcepts& e) {
    std::vector<ConceptId> members = e.members;
    sort_unique(members);
    if (members.size() < 2)
        throw TaxonomyError("merge requires at least two distinct concepts");
    for (const auto& m : members) t.at(m);
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (t.related(members[i], members[j]))
                throw TaxonomyError("cannot merge taxonomy-related concepts '" +
                                    members[i] + "' and '" + members[j] + "'");

    auto is_member = [&](const ConceptId& id) {
        return std::binary_search(members.begin(), members.end(), id);
    };
    if (t.contains(e.replacement_id) && !is_member(e.replacement_id))
        throw TaxonomyError("replacement id already exists: " +
                            e.replacement_id);

    OntologyConcept merged;
    merged.id = e.replacement_id;
    merged.label =
        e.replacement_label.empty() ? e.replacement_id : e.replacement_label;
    bool all_types = true;
    bool has_children = false;
    for (const auto& m : members) {
        const auto& c = t.at(m);
        all_types &= c.kind == ConceptKind::annotation_type;
        has_children |= !t.children(m).empty();
        for (const auto& p : c.parents)
            if (!is_member(p)) merged.parents.push_back(p);
    }
    sort_unique(merged.parents);
    merged.kind = (all_types && !has_children) ? ConceptKind::annotation_type
                                               : ConceptKind::category;

    std::vector<OntologyConcept> concepts;
    for (const auto& c : t.concepts()) {
        if (is_member(c.id)) continue;
        OntologyConcept copy = c;
        bool had_member_parent = false;
        std::erase_if(copy.parents, [&](const ConceptId& p) {
            bool m = is_member(p);
            had_member_parent |= m;
            return m;
        });
        if (had_member_parent) copy.parents.push_back(merged.id);
        concepts.push_back(std::move(copy));
    }
    concepts.push_back(std::move(merged));
    Taxonomy out = Taxonomy::from_concepts(std::move(concepts));
    check_acyclic(out);
    return out;
}

}  // namespace

Taxonomy apply_edit(const Taxonomy& t, const TaxonomyEdit& edit) {
    return std::visit(
        [&](const auto& e) -> Taxonomy {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, AddConcept>)
                return apply_add(t, e);
            else if constexpr (std::is_same_v<T, RemoveConcept>)
                return apply_remove(t, e);
            else if constexpr (std::is_same_v<T, RenameConcept>)
                return apply_rename(t, e);
            else
                return apply_merge(t, e);
        },
        edit);
}

}  // namespace annolattice
