#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "routeprobe/geo.hpp"

namespace routeprobe {

/// Boolean expression over region-membership atoms:
///
///   expr := "true" | "false" | "in(" name ")" | "!" expr
///         | expr "&&" expr | expr "||" expr | "(" expr ")"
///
/// with NOT > AND > OR precedence. Immutable; copies share the tree.
class GuardExpr {
public:
    enum class Kind { Constant, InRegion, Not, And, Or };

    static GuardExpr constant(bool value);
    static GuardExpr in_region(std::string region);
    static GuardExpr negation(GuardExpr operand);
    static GuardExpr conjunction(GuardExpr lhs, GuardExpr rhs);
    static GuardExpr disjunction(GuardExpr lhs, GuardExpr rhs);

    Kind kind() const noexcept;

    /// Region names referenced anywhere in the expression, in first-use
    /// order without duplicates.
    std::vector<std::string> region_names() const;

    /// Throws ValidationError naming the first region absent from rs.
    void bind(const RegionSet& rs) const;

    /// Standard boolean evaluation with in(r) == contains(region r, p).
    /// Requires every referenced region to exist in rs.
    bool evaluate(const GeoPoint& p, const RegionSet& rs) const;

    /// Evaluation over the classification cell of a point: cell i < rs.size()
    /// means "strictly inside region i", cell rs.size() means "in no region".
    /// Over a validated RegionSet this agrees with evaluate() everywhere.
    bool evaluate_cell(std::size_t cell, const RegionSet& rs) const;

    std::string to_string() const;

private:
    struct Node;
    explicit GuardExpr(std::shared_ptr<const Node> node)
        : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Free-function form of GuardExpr::evaluate.
bool evaluate_guard(const GuardExpr& guard, const GeoPoint& p,
                    const RegionSet& rs);

/// Truth table of a guard over the rs.size() + 1 classification cells
/// (the last entry is the outside-all-regions cell). Because the guard
/// grammar's only atoms are region memberships, two guards are equal as
/// predicates over GeoPoints iff their tables are equal.
std::vector<bool> guard_truth_table(const GuardExpr& guard,
                                    const RegionSet& rs);

/// Parses the guard grammar. Region names may be bare identifiers or
/// double-quoted. Throws ParseError with a column position.
GuardExpr parse_guard(std::string_view text,
                      std::string_view source_name = "<guard>",
                      std::size_t line = 1);

}  // namespace routeprobe
