#include "annolattice/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace annolattice {

namespace {

// Canonical order: extent size descending, ties by lexicographic extent.
void sort_canonical(std::vector<FormalConcept>& concepts) {
    std::vector<std::size_t> counts(concepts.size());
    for (std::size_t i = 0; i < concepts.size(); ++i)
        counts[i] = concepts[i].extent.count();
    std::vector<std::size_t> order(concepts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (counts[a] != counts[b]) return counts[a] > counts[b];
        return BitVec::lex_index_compare(concepts[a].extent,
                                         concepts[b].extent) < 0;
    });
    std::vector<FormalConcept> sorted;
    sorted.reserve(concepts.size());
    for (std::size_t i : order) sorted.push_back(std::move(concepts[i]));
    concepts = std::move(sorted);
}

}  // namespace

std::vector<FormalConcept> enumerate_concepts(const FormalContext& ctx) {
    const std::size_t m = ctx.attribute_count();
    std::vector<FormalConcept> out;

    // Intent closure of an extent, computed column-wise: attribute j is in
    // the closure iff the extent is contained in col(j).
    auto close_intent = [&](const BitVec& extent) {
        BitVec intent(m);
        for (std::size_t j = 0; j < m; ++j)
            if (extent.is_subset_of(ctx.col(j))) intent.set(j);
        return intent;
    };

    struct Walker {
        const FormalContext& ctx;
        std::vector<FormalConcept>& out;
        std::size_t m;

        void visit(const BitVec& extent, const BitVec& intent, std::size_t y) {
            out.push_back({extent, intent});
            for (std::size_t j = y; j < m; ++j) {
                if (intent.test(j)) continue;
                BitVec child_extent = BitVec::intersection(extent, ctx.col(j));
                // Canonicity: the closure may not add attributes below j
                // beyond those already in the intent.
                bool canonical = true;
                BitVec child_intent(m);
                for (std::size_t k = 0; k < m; ++k) {
                    if (child_extent.is_subset_of(ctx.col(k))) {
                        if (k < j && !intent.test(k)) {
                            canonical = false;
                            break;
                        }
                        child_intent.set(k);
                    }
                }
                if (canonical) visit(child_extent, child_intent, j + 1);
            }
        }
    };

    BitVec top_extent(ctx.object_count(), true);
    BitVec top_intent = close_intent(top_extent);
    Walker{ctx, out, m}.visit(top_extent, top_intent, 0);
    sort_canonical(out);
    return out;
}

std::vector<FormalConcept> brute_force_concepts(const FormalContext& ctx,
                                                std::size_t attribute_limit) {
    const std::size_t m = ctx.attribute_count();
    if (m > attribute_limit)
        throw LatticeError("brute force limit exceeded: " + std::to_string(m) +
                           " attributes > " + std::to_string(attribute_limit));

    std::unordered_map<BitVec, BitVec, BitVecHash> by_intent;
    const std::uint64_t subsets = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        BitVec attrs(m);
        for (std::size_t j = 0; j < m; ++j)
            if (mask & (std::uint64_t{1} << j)) attrs.set(j);
        BitVec extent = ctx.extent_of(attrs);
        BitVec intent = ctx.intent_of(extent);
        by_intent.emplace(std::move(intent), std::move(extent));
    }

    std::vector<FormalConcept> out;
    out.reserve(by_intent.size());
    for (auto& [intent, extent] : by_intent)
        out.push_back({extent, intent});
    sort_canonical(out);
    return out;
}

Ratio make_ratio(std::uint64_t num, std::uint64_t den) {
    if (den == 0) return {};
    std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

int round_half_up_percent(std::uint64_t count, std::uint64_t total) {
    if (total == 0) return 0;
    return static_cast<int>((200 * count + total) / (2 * total));
}

ConceptLattice build_lattice(const FormalContext& ctx,
                             std::vector<FormalConcept> concepts) {
    sort_canonical(concepts);
    const std::size_t n = concepts.size();
    const std::size_t nobj = ctx.object_count();
    const std::size_t nattr = ctx.attribute_count();

    ConceptLattice l;
    l.objects_ = ctx.objects();
    l.attributes_ = ctx.attributes();
    l.concepts_ = std::move(concepts);

    std::unordered_map<BitVec, std::uint32_t, BitVecHash> by_intent;
    std::unordered_map<BitVec, std::uint32_t, BitVecHash> by_extent;
    for (std::size_t i = 0; i < n; ++i) {
        by_intent.emplace(l.concepts_[i].intent, static_cast<std::uint32_t>(i));
        by_extent.emplace(l.concepts_[i].extent, static_cast<std::uint32_t>(i));
    }
    if (by_intent.size() != n || by_extent.size() != n)
        throw LatticeError("duplicate concepts in input set");

    // Top and bottom; both must exist in a complete set.
    {
        BitVec all_obj(nobj, true);
        BitVec all_attr(nattr, true);
        // The full object set is always closed, so it is the top's extent.
        auto t = by_extent.find(all_obj);
        if (t == by_extent.end())
            throw LatticeError("incomplete concept set: top missing");
        l.top_ = t->second;
        auto b = by_intent.find(all_attr);
        if (b == by_intent.end())
            throw LatticeError("incomplete concept set: bottom missing");
        l.bottom_ = b->second;
    }

    // Reduced labels. The object concept of o has intent equal to row(o);
    // the attribute concept of a has extent equal to col(a).
    l.object_concepts_.resize(nobj);
    l.attribute_concepts_.resize(nattr);
    l.own_objects_.assign(n, BitVec(nobj));
    l.own_attributes_.assign(n, BitVec(nattr));
    for (std::size_t o = 0; o < nobj; ++o) {
        auto it = by_intent.find(ctx.row(o));
        if (it == by_intent.end())
            throw LatticeError("incomplete concept set: no object concept for " +
                               ctx.objects()[o]);
        l.object_concepts_[o] = it->second;
        l.own_objects_[it->second].set(o);
    }
    for (std::size_t a = 0; a < nattr; ++a) {
        auto it = by_extent.find(ctx.col(a));
        if (it == by_extent.end())
            throw LatticeError(
                "incomplete concept set: no attribute concept for " +
                ctx.attributes()[a]);
        l.attribute_concepts_[a] = it->second;
        l.own_attributes_[it->second].set(a);
    }

    // Strict super-concepts per concept, as index bitsets. With the
    // canonical order, any strict super-concept of i sits at an index < i,
    // and extent inclusion is intent containment reversed -- the subset
    // test runs on the (short) intent words.
    std::vector<BitVec> above(n, BitVec(n));
    for (std::size_t i = 0; i < n; ++i) {
        const BitVec& intent_i = l.concepts_[i].intent;
        std::size_t count_i = l.concepts_[i].extent.count();
        for (std::size_t j = 0; j < i; ++j) {
            if (l.concepts_[j].extent.count() == count_i) continue;
            if (l.concepts_[j].intent.is_subset_of(intent_i)) above[i].set(j);
        }
    }

    // Covers: minimal elements of each above-set. Scanning candidates from
    // the most specific (highest index) down, an accepted cover removes all
    // of its own strict super-concepts from the candidate pool.
    for (std::size_t i = 0; i < n; ++i) {
        BitVec work = above[i];
        auto cands = work.indices();
        for (auto it = cands.rbegin(); it != cands.rend(); ++it) {
            if (!work.test(*it)) continue;
            l.covers_.emplace_back(static_cast<std::uint32_t>(i),
                                   static_cast<std::uint32_t>(*it));
            work.subtract(above[*it]);
        }
    }
    std::sort(l.covers_.begin(), l.covers_.end());
    return l;
}

void ConceptLattice::rebuild_label_indices() {
    object_concepts_.assign(objects_.size(), 0);
    attribute_concepts_.assign(attributes_.size(), 0);
    for (std::size_t c = 0; c < concepts_.size(); ++c) {
        own_objects_[c].for_each_set([&](std::size_t o) {
            object_concepts_[o] = static_cast<std::uint32_t>(c);
        });
        own_attributes_[c].for_each_set([&](std::size_t a) {
            attribute_concepts_[a] = static_cast<std::uint32_t>(c);
        });
    }
}

ConceptLattice lattice_from_parts(
    std::vector<std::string> objects, std::vector<ConceptId> attributes,
    std::vector<FormalConcept> concepts,
    std::vector<std::pair<std::uint32_t, std::uint32_t>> covers,
    std::size_t top, std::size_t bottom, std::vector<BitVec> own_objects,
    std::vector<BitVec> own_attributes) {
    ConceptLattice l;
    l.objects_ = std::move(objects);
    l.attributes_ = std::move(attributes);
    l.concepts_ = std::move(concepts);
    l.covers_ = std::move(covers);
    l.top_ = top;
    l.bottom_ = bottom;
    l.own_objects_ = std::move(own_objects);
    l.own_attributes_ = std::move(own_attributes);
    if (l.own_objects_.size() != l.concepts_.size() ||
        l.own_attributes_.size() != l.concepts_.size())
        throw LatticeError("label arrays do not match concept count");
    l.rebuild_label_indices();
    return l;
}

std::size_t ConceptLattice::object_concept(const std::string& note_id) const {
    auto it = std::find(objects_.begin(), objects_.end(), note_id);
    if (it == objects_.end())
        throw LatticeError("unknown note id: " + note_id);
    return object_concepts_[static_cast<std::size_t>(it - objects_.begin())];
}

std::size_t ConceptLattice::attribute_concept(const ConceptId& id) const {
    auto it = std::find(attributes_.begin(), attributes_.end(), id);
    if (it == attributes_.end())
        throw LatticeError("unknown attribute id: " + id);
    return attribute_concepts_[static_cast<std::size_t>(it - attributes_.begin())];
}

namespace {

template <typename Names>
std::vector<typename Names::value_type> pick(const Names& names,
                                             const BitVec& bits) {
    std::vector<typename Names::value_type> out;
    bits.for_each_set([&](std::size_t i) { out.push_back(names[i]); });
    return out;
}

}  // namespace

std::vector<ConceptId> ConceptLattice::intent_ids(std::size_t i) const {
    return pick(attributes_, concepts_[i].intent);
}
std::vector<std::string> ConceptLattice::extent_ids(std::size_t i) const {
    return pick(objects_, concepts_[i].extent);
}
std::vector<ConceptId> ConceptLattice::own_attribute_ids(std::size_t i) const {
    return pick(attributes_, own_attributes_[i]);
}
std::vector<std::string> ConceptLattice::own_object_ids(std::size_t i) const {
    return pick(objects_, own_objects_[i]);
}

bool operator==(const ConceptLattice& a, const ConceptLattice& b) {
    return a.objects_ == b.objects_ && a.attributes_ == b.attributes_ &&
           a.concepts_ == b.concepts_ && a.covers_ == b.covers_ &&
           a.top_ == b.top_ && a.bottom_ == b.bottom_ &&
           a.own_objects_ == b.own_objects_ &&
           a.own_attributes_ == b.own_attributes_;
}

}  // namespace annolattice
