#ifndef MULTFAM_NEWTON_HPP
#define MULTFAM_NEWTON_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "multfam/monomial_ideal.hpp"
#include "multfam/rational.hpp"

namespace multfam {

/// Largest supported dimension for hull computations.
inline constexpr int max_hull_dim = 4;

/// Supporting half-space {a : normal·a >= offset}; normal primitive.
struct Facet
{
    ExponentVector normal;
    std::int64_t offset = 0;
    bool operator==(const Facet &) const = default;
};

/// conv(generators) + nonnegative orthant, for an m-primary monomial ideal of
/// a polynomial ring. Bounded facets are sorted lexicographically by normal.
class NewtonPolyhedron
{
public:
    NewtonPolyhedron(int dim, std::vector<ExponentVector> vertices, std::vector<Facet> facets,
                     std::vector<std::vector<ExponentVector>> facet_points);

    int dim() const { return dim_; }
    const std::vector<ExponentVector> &vertices() const { return vertices_; }
    const std::vector<Facet> &bounded_facets() const { return facets_; }
    /// Points of the input set lying on each bounded facet (same order).
    const std::vector<std::vector<ExponentVector>> &facet_points() const { return facet_points_; }

    bool contains(std::span<const std::int64_t> a) const;

private:
    int dim_;
    std::vector<ExponentVector> vertices_;
    std::vector<Facet> facets_;
    std::vector<std::vector<ExponentVector>> facet_points_;
};

/// Newton polyhedron of the point set; requires a pure power on every axis.
NewtonPolyhedron newton_polyhedron(std::vector<ExponentVector> points, int d);
NewtonPolyhedron newton_polyhedron(const MonomialIdeal &I);

/// Exact volume of the orthant minus the polyhedron.
Rational covolume(const NewtonPolyhedron &P);

/// Volume of conv(points) in R^k, k <= 3 (points assumed full-dimensional
/// or the result is zero).
Rational polytope_volume(const std::vector<std::vector<Rational>> &points, int k);

MonomialIdeal integral_closure(const MonomialIdeal &I);

std::vector<std::pair<ExponentVector, std::int64_t>> rees_weights(const MonomialIdeal &I);

/// w·a >= threshold over nonnegative lattice points a.
struct LinearConstraint
{
    ExponentVector weights;
    Rational threshold;
};

/// Monomial ideal spanned by the lattice points satisfying every constraint.
/// Every coordinate axis must be bounded by some constraint with a positive
/// threshold, unless all thresholds are <= 0 (unit ideal).
MonomialIdeal lattice_ideal(AmbientPtr ambient, const std::vector<LinearConstraint> &constraints);

/// min w·x over the real polyhedron {x >= 0, every constraint}, w > 0.
/// Vertex enumeration, so intended for d <= 4 and a handful of constraints.
Rational min_linear(const ExponentVector &w, const std::vector<LinearConstraint> &constraints);

} // namespace multfam

#endif
