#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "annolattice/context.hpp"

namespace annolattice {

class LatticeError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FormalConcept {
    BitVec extent;  // over context objects
    BitVec intent;  // over context attributes

    friend bool operator==(const FormalConcept& a, const FormalConcept& b) {
        return a.extent == b.extent && a.intent == b.intent;
    }
};

// All formal concepts of ctx in canonical order: extent size descending,
// ties by lexicographic extent (as ascending object-index sequences).
// Close-by-One over the attribute order with a canonicity test.
std::vector<FormalConcept> enumerate_concepts(const FormalContext& ctx);

// Exhaustive oracle: closes every attribute subset. Same canonical order.
// Throws LatticeError when attribute_count() exceeds the limit.
std::vector<FormalConcept> brute_force_concepts(const FormalContext& ctx,
                                                std::size_t attribute_limit = 20);

// Exact extent share; percent = 100 * count / total, kept rational.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;  // > 0, reduced

    friend bool operator==(const Ratio&, const Ratio&) = default;
};

Ratio make_ratio(std::uint64_t num, std::uint64_t den);

struct ConceptStats {
    std::uint64_t count = 0;
    std::uint64_t total = 0;

    Ratio percent() const {
        return total == 0 ? Ratio{} : make_ratio(100 * count, total);
    }
};

// 100 * count / total rounded half-up to an integer; 0 when total == 0.
int round_half_up_percent(std::uint64_t count, std::uint64_t total);

// The concept lattice with Hasse covers, reduced labels and extent stats.
// Self-contained: object/attribute names are copied from the context, so
// the lattice stays valid after the context is gone.
class ConceptLattice {
public:
    ConceptLattice() = default;

    std::size_t concept_count() const { return concepts_.size(); }
    const FormalConcept& concept_at(std::size_t i) const { return concepts_[i]; }
    const std::vector<FormalConcept>& concepts() const { return concepts_; }

    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<ConceptId>& attributes() const { return attributes_; }

    // Cover pairs (lower, upper), sorted.
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& covers() const {
        return covers_;
    }
    std::size_t top_index() const { return top_; }
    std::size_t bottom_index() const { return bottom_; }

    const BitVec& own_objects(std::size_t i) const { return own_objects_[i]; }
    const BitVec& own_attributes(std::size_t i) const {
        return own_attributes_[i];
    }

    // Most specific concept containing the object / most generic concept
    // containing the attribute. Unknown ids throw LatticeError.
    std::size_t object_concept(const std::string& note_id) const;
    std::size_t attribute_concept(const ConceptId& id) const;
    std::size_t object_concept_by_index(std::size_t obj) const {
        return object_concepts_[obj];
    }
    std::size_t attribute_concept_by_index(std::size_t attr) const {
        return attribute_concepts_[attr];
    }

    ConceptStats stats(std::size_t i) const {
        return {concepts_[i].extent.count(), objects_.size()};
    }

    // Lattice order: extent inclusion.
    bool leq(std::size_t lower, std::size_t upper) const {
        return concepts_[lower].extent.is_subset_of(concepts_[upper].extent);
    }

    std::vector<ConceptId> intent_ids(std::size_t i) const;
    std::vector<std::string> extent_ids(std::size_t i) const;
    std::vector<ConceptId> own_attribute_ids(std::size_t i) const;
    std::vector<std::string> own_object_ids(std::size_t i) const;

    friend bool operator==(const ConceptLattice& a, const ConceptLattice& b);

private:
    friend ConceptLattice build_lattice(const FormalContext&,
                                        std::vector<FormalConcept>);
    friend ConceptLattice lattice_from_parts(
        std::vector<std::string> objects, std::vector<ConceptId> attributes,
        std::vector<FormalConcept> concepts,
        std::vector<std::pair<std::uint32_t, std::uint32_t>> covers,
        std::size_t top, std::size_t bottom,
        std::vector<BitVec> own_objects, std::vector<BitVec> own_attributes);

    void rebuild_label_indices();

    std::vector<std::string> objects_;
    std::vector<ConceptId> attributes_;
    std::vector<FormalConcept> concepts_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> covers_;
    std::size_t top_ = 0;
    std::size_t bottom_ = 0;
    std::vector<BitVec> own_objects_;
    std::vector<BitVec> own_attributes_;
    std::vector<std::uint32_t> object_concepts_;     // per object
    std::vector<std::uint32_t> attribute_concepts_;  // per attribute
};

// Builds covers (transitive reduction of extent inclusion), reduced labels
// and stats. Requires the complete concept set of ctx; an incomplete set is
// detected through missing object/attribute concepts or missing top/bottom
// and raises LatticeError.
ConceptLattice build_lattice(const FormalContext& ctx,
                             std::vector<FormalConcept> concepts);

// Reassembles a lattice from serialized parts (see io.hpp).
ConceptLattice lattice_from_parts(
    std::vector<std::string> objects, std::vector<ConceptId> attributes,
    std::vector<FormalConcept> concepts,
    std::vector<std::pair<std::uint32_t, std::uint32_t>> covers,
    std::size_t top, std::size_t bottom, std::vector<BitVec> own_objects,
    std::vector<BitVec> own_attributes);

}  // namespace annolattice
