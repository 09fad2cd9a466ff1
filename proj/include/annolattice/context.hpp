#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "annolattice/bitvec.hpp"
#include "annolattice/ontology.hpp"

namespace annolattice {

struct Annotation {
    std::string note_id;
    std::string annotator_id;
    std::optional<std::string> group_id;
    std::vector<ConceptId> types;  // non-empty; set semantics
    std::optional<std::string> body;
};

struct ActivityLog {
    Taxonomy taxonomy;
    std::vector<Annotation> annotations;
};

struct Selector {
    enum class Mode { all, by_annotators, by_group };
    Mode mode = Mode::all;
    std::vector<std::string> ids;  // non-empty unless mode == all
};

struct ContextOptions {
    // Annotations tagged with categories are rejected unless set.
    bool lenient_categories = false;
};

class ContextError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Boolean incidence between notes (objects) and taxonomy concepts
// (attributes), rows upward-closed under the taxonomy. Objects keep input
// order; attributes are in topological-then-lexicographic taxonomy order
// and include every concept, used or not. Immutable after construction.
class FormalContext {
public:
    FormalContext() = default;

    // Raw constructor for tests and generated contexts; rows hold attribute
    // indices per object.
    static FormalContext from_rows(
        std::vector<std::string> objects, std::vector<ConceptId> attributes,
        const std::vector<std::vector<std::size_t>>& rows);

    std::size_t object_count() const { return objects_.size(); }
    std::size_t attribute_count() const { return attributes_.size(); }
    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<ConceptId>& attributes() const { return attributes_; }

    std::size_t object_index(const std::string& note_id) const;
    std::size_t attribute_index(const ConceptId& id) const;

    const BitVec& row(std::size_t obj) const { return rows_[obj]; }
    const BitVec& col(std::size_t attr) const { return cols_[attr]; }

    // Derivation (Galois) operators over index bitsets.
    BitVec intent_of(const BitVec& objs) const;   // over attributes
    BitVec extent_of(const BitVec& attrs) const;  // over objects

    // Id-level derivation; unknown ids throw ContextError. Results sorted
    // in context order.
    std::vector<ConceptId> derive_intent(std::span<const std::string> objs) const;
    std::vector<std::string> derive_extent(std::span<const ConceptId> attrs) const;
    std::vector<std::string> closure_extent(std::span<const std::string> objs) const;
    std::vector<ConceptId> closure_intent(std::span<const ConceptId> attrs) const;

    std::vector<ConceptId> derive_intent(std::initializer_list<std::string> objs) const {
        return derive_intent(std::span<const std::string>(objs.begin(), objs.size()));
    }
    std::vector<std::string> derive_extent(std::initializer_list<ConceptId> attrs) const {
        return derive_extent(std::span<const ConceptId>(attrs.begin(), attrs.size()));
    }
    std::vector<std::string> closure_extent(std::initializer_list<std::string> objs) const {
        return closure_extent(std::span<const std::string>(objs.begin(), objs.size()));
    }
    std::vector<ConceptId> closure_intent(std::initializer_list<ConceptId> attrs) const {
        return closure_intent(std::span<const ConceptId>(attrs.begin(), attrs.size()));
    }

    bool has_provenance() const { return !annotators_.empty(); }
    const std::string& annotator_of(std::size_t obj) const {
        return annotators_[obj];
    }
    const std::optional<std::string>& group_of(std::size_t obj) const {
        return groups_[obj];
    }

    // True when the selector matched zero notes.
    bool empty_selection() const { return objects_.empty(); }

private:
    friend FormalContext build_context(const ActivityLog&, const Selector&,
                                       const ContextOptions&);

    void finish_columns();

    std::vector<std::string> objects_;
    std::vector<ConceptId> attributes_;
    std::unordered_map<std::string, std::size_t> object_index_;
    std::unordered_map<ConceptId, std::size_t> attribute_index_;
    std::vector<BitVec> rows_;
    std::vector<BitVec> cols_;
    std::vector<std::string> annotators_;
    std::vector<std::optional<std::string>> groups_;
};

FormalContext build_context(const ActivityLog& log, const Selector& sel,
                            const ContextOptions& opts = {});

}  // namespace annolattice
