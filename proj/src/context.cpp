#include "annolattice/context.hpp"

#include <algorithm>
#include <set>

namespace annolattice {

void FormalContext::finish_columns() {
    cols_.assign(attributes_.size(), BitVec(objects_.size()));
    for (std::size_t o = 0; o < rows_.size(); ++o)
        rows_[o].for_each_set([&](std::size_t a) { cols_[a].set(o); });
}

FormalContext FormalContext::from_rows(
    std::vector<std::string> objects, std::vector<ConceptId> attributes,
    const std::vector<std::vector<std::size_t>>& rows) {
    if (rows.size() != objects.size())
        throw ContextError("row count does not match object count");
    FormalContext ctx;
    ctx.objects_ = std::move(objects);
    ctx.attributes_ = std::move(attributes);
    for (std::size_t i = 0; i < ctx.objects_.size(); ++i)
        if (!ctx.object_index_.emplace(ctx.objects_[i], i).second)
            throw ContextError("duplicate note id: " + ctx.objects_[i]);
    for (std::size_t i = 0; i < ctx.attributes_.size(); ++i)
        if (!ctx.attribute_index_.emplace(ctx.attributes_[i], i).second)
            throw ContextError("duplicate attribute id: " + ctx.attributes_[i]);
    ctx.rows_.reserve(rows.size());
    for (const auto& r : rows) {
        BitVec row(ctx.attributes_.size());
        for (std::size_t a : r) {
            if (a >= ctx.attributes_.size())
                throw ContextError("attribute index out of range");
            row.set(a);
        }
        ctx.rows_.push_back(std::move(row));
    }
    ctx.finish_columns();
    return ctx;
}

std::size_t FormalContext::object_index(const std::string& note_id) const {
    auto it = object_index_.find(note_id);
    if (it == object_index_.end())
        throw ContextError("unknown note id: " + note_id);
    return it->second;
}

std::size_t FormalContext::attribute_index(const ConceptId& id) const {
    auto it = attribute_index_.find(id);
    if (it == attribute_index_.end())
        throw ContextError("unknown attribute id: " + id);
    return it->second;
}

BitVec FormalContext::intent_of(const BitVec& objs) const {
    BitVec intent(attributes_.size(), true);  // intent of no objects is M
    objs.for_each_set([&](std::size_t o) { intent.intersect_with(rows_[o]); });
    return intent;
}

BitVec FormalContext::extent_of(const BitVec& attrs) const {
    BitVec extent(objects_.size(), true);  // extent of no attributes is G
    attrs.for_each_set([&](std::size_t a) { extent.intersect_with(cols_[a]); });
    return extent;
}

namespace {

template <typename Ids, typename Lookup>
BitVec to_bits(std::size_t universe, const Ids& ids, Lookup&& lookup) {
    BitVec bits(universe);
    for (const auto& id : ids) bits.set(lookup(id));
    return bits;
}

}  // namespace

std::vector<ConceptId> FormalContext::derive_intent(
    std::span<const std::string> objs) const {
    BitVec bits = to_bits(objects_.size(), objs,
                          [&](const std::string& id) { return object_index(id); });
    std::vector<ConceptId> out;
    intent_of(bits).for_each_set(
        [&](std::size_t a) { out.push_back(attributes_[a]); });
    return out;
}

std::vector<std::string> FormalContext::derive_extent(
    std::span<const ConceptId> attrs) const {
    BitVec bits = to_bits(attributes_.size(), attrs,
                          [&](const ConceptId& id) { return attribute_index(id); });
    std::vector<std::string> out;
    extent_of(bits).for_each_set(
        [&](std::size_t o) { out.push_back(objects_[o]); });
    return out;
}

std::vector<std::string> FormalContext::closure_extent(
    std::span<const std::string> objs) const {
    BitVec bits = to_bits(objects_.size(), objs,
                          [&](const std::string& id) { return object_index(id); });
    std::vector<std::string> out;
    extent_of(intent_of(bits)).for_each_set(
        [&](std::size_t o) { out.push_back(objects_[o]); });
    return out;
}

std::vector<ConceptId> FormalContext::closure_intent(
    std::span<const ConceptId> attrs) const {
    BitVec bits = to_bits(attributes_.size(), attrs,
                          [&](const ConceptId& id) { return attribute_index(id); });
    std::vector<ConceptId> out;
    intent_of(extent_of(bits)).for_each_set(
        [&](std::size_t a) { out.push_back(attributes_[a]); });
    return out;
}

FormalContext build_context(const ActivityLog& log, const Selector& sel,
                            const ContextOptions& opts) {
    if (sel.mode != Selector::Mode::all && sel.ids.empty())
        throw ContextError("selector requires at least one id");

    // Selector ids must exist in the log.
    if (sel.mode != Selector::Mode::all) {
        std::set<std::string> known;
        for (const auto& a : log.annotations) {
            if (sel.mode == Selector::Mode::by_annotators)
                known.insert(a.annotator_id);
            else if (a.group_id)
                known.insert(*a.group_id);
        }
        for (const auto& id : sel.ids)
            if (!known.count(id))
                throw ContextError("unknown selector id: " + id);
    }

    auto selected = [&](const Annotation& a) {
        switch (sel.mode) {
            case Selector::Mode::all:
                return true;
            case Selector::Mode::by_annotators:
                return std::find(sel.ids.begin(), sel.ids.end(),
                                 a.annotator_id) != sel.ids.end();
            case Selector::Mode::by_group:
                return a.group_id && std::find(sel.ids.begin(), sel.ids.end(),
                                               *a.group_id) != sel.ids.end();
        }
        return false;
    };

    FormalContext ctx;
    ctx.attributes_ = log.taxonomy.topo_lex_order();
    for (std::size_t i = 0; i < ctx.attributes_.size(); ++i)
        ctx.attribute_index_.emplace(ctx.attributes_[i], i);

    for (const auto& a : log.annotations) {
        if (!selected(a)) continue;
        if (a.types.empty())
            throw ContextError("note '" + a.note_id + "' carries no types");
        for (const auto& ty : a.types) {
            if (!log.taxonomy.contains(ty))
                throw ContextError("note '" + a.note_id +
                                   "' references unknown concept '" + ty + "'");
            if (!opts.lenient_categories &&
                log.taxonomy.at(ty).kind == ConceptKind::category)
                throw ContextError("note '" + a.note_id +
                                   "' is tagged with category '" + ty + "'");
        }
        std::size_t o = ctx.objects_.size();
        if (!ctx.object_index_.emplace(a.note_id, o).second)
            throw ContextError("duplicate note id: " + a.note_id);
        ctx.objects_.push_back(a.note_id);
        BitVec row(ctx.attributes_.size());
        for (const auto& c : log.taxonomy.up_closure(a.types))
            row.set(ctx.attribute_index_.at(c));
        ctx.rows_.push_back(std::move(row));
        ctx.annotators_.push_back(a.annotator_id);
        ctx.groups_.push_back(a.group_id);
    }
    ctx.finish_columns();
    return ctx;
}

}  // namespace annolattice
