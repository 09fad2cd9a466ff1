#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace annolattice {

using ConceptId = std::string;

enum class ConceptKind { category, annotation_type };

struct OntologyConcept {
    ConceptId id;
    std::string label;
    ConceptKind kind = ConceptKind::category;
    std::vector<ConceptId> parents;  // sorted, unique
};

struct Violation {
    enum class Kind {
        cycle,
        type_with_children,
        category_without_types,
        duplicate_label,
    };
    enum class Severity { error, warning };

    Kind kind;
    Severity severity;
    std::vector<ConceptId> concepts;  // sorted
    std::string message;
};

class TaxonomyError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A taxonomical annotation ontology: concepts under a multiple-inheritance
// is-a relation. Construction only enforces referential integrity (unique
// ids, declared parents); acyclicity and the leaf rule are checked by
// validate(). Immutable after construction.
class Taxonomy {
public:
    Taxonomy() = default;

    // Throws TaxonomyError on duplicate ids, undeclared parents, or ids
    // violating the non-empty / no-surrounding-whitespace invariant.
    static Taxonomy from_concepts(std::vector<OntologyConcept> concepts);

    std::size_t size() const { return concepts_.size(); }
    bool empty() const { return concepts_.empty(); }
    bool contains(const ConceptId& id) const { return index_.count(id) != 0; }

    const OntologyConcept& at(const ConceptId& id) const;
    const std::vector<OntologyConcept>& concepts() const { return concepts_; }

    // Concepts with no parents, sorted by id.
    std::vector<ConceptId> roots() const;
    // Direct children, sorted by id.
    const std::vector<ConceptId>& children(const ConceptId& id) const;

    // Leaf-kind concepts usable for tagging, sorted by id.
    std::vector<ConceptId> annotation_types() const;

    // Reflexive-transitive closure upward (the set plus all ancestors),
    // sorted by id. Throws TaxonomyError on unknown ids. Terminates on
    // cyclic inputs.
    std::vector<ConceptId> up_closure(std::span<const ConceptId> ids) const;
    std::vector<ConceptId> up_closure(std::initializer_list<ConceptId> ids) const {
        return up_closure(std::span<const ConceptId>(ids.begin(), ids.size()));
    }

    // True when ancestor strictly subsumes descendant (descendant != ancestor,
    // ancestor reachable via parent edges).
    bool is_strict_ancestor(const ConceptId& ancestor,
                            const ConceptId& descendant) const;
    bool related(const ConceptId& a, const ConceptId& b) const;

    std::vector<Violation> validate() const;

    // Deterministic attribute order: parents before children, ties by id.
    // Throws TaxonomyError when the parent relation is cyclic.
    std::vector<ConceptId> topo_lex_order() const;

private:
    std::size_t index_of(const ConceptId& id) const;

    std::vector<OntologyConcept> concepts_;  // declaration order
    std::unordered_map<ConceptId, std::size_t> index_;
    std::vector<std::vector<ConceptId>> children_;  // per concept, sorted
};

struct AddConcept {
    OntologyConcept concept;
};
struct RemoveConcept {
    ConceptId target;
};
struct RenameConcept {
    ConceptId target;
    std::string new_label;
};
struct MergeConcepts {
    std::vector<ConceptId> members;  // >= 2 distinct ids
    ConceptId replacement_id;
    std::string replacement_label;
};

using TaxonomyEdit =
    std::variant<AddConcept, RemoveConcept, RenameConcept, MergeConcepts>;

// Pure: returns the edited taxonomy, the input is untouched. Throws
// TaxonomyError on unknown targets, edits that would leave a cyclic parent
// relation, and merges of taxonomy-related concepts.
Taxonomy apply_edit(const Taxonomy& t, const TaxonomyEdit& edit);

}  // namespace annolattice
