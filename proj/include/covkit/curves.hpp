#pragma once

#include "covkit/multipoly.hpp"
#include "covkit/numberfield.hpp"
#include "covkit/rational.hpp"
#include "covkit/upoly.hpp"

#include <string>
#include <vector>

namespace covkit {

// Forms live in this context.
const Vars& plane_vars();
// Local affine coordinates at a point (the point sits at the origin).
const Vars& local_vars();

class PlanePoint {
public:
    PlanePoint(Rational x, Rational y, Rational z);
    static PlanePoint affine(const Rational& x, const Rational& y) { return PlanePoint(x, y, 1); }

    // Normalized: last nonzero coordinate is 1.
    const Rational& x() const { return c_[0]; }
    const Rational& y() const { return c_[1]; }
    const Rational& z() const { return c_[2]; }
    bool is_affine() const { return c_[2] != 0; }
    std::vector<Rational> coords() const { return {c_[0], c_[1], c_[2]}; }

    friend bool operator==(const PlanePoint& a, const PlanePoint& b) { return a.c_[0] == b.c_[0] && a.c_[1] == b.c_[1] && a.c_[2] == b.c_[2]; }
    friend bool operator!=(const PlanePoint& a, const PlanePoint& b) { return !(a == b); }
    friend bool operator<(const PlanePoint& a, const PlanePoint& b);

private:
    Rational c_[3];
};

std::string to_string(const PlanePoint& p);

// Tangent direction (dx, dy) in local affine coordinates, up to scaling.
struct Direction {
    Rational dx, dy;

    Direction normalized() const;
    friend bool operator==(const Direction& a, const Direction& b) { return a.dx * b.dy == a.dy * b.dx; }
};

std::string to_string(const Direction& d);

class PlaneCurve {
public:
    // Throws DegenerateInputError for zero or non-homogeneous forms.
    explicit PlaneCurve(const MultiPoly& form, std::string name = {});
    static PlaneCurve parse(std::string_view text, std::string name = {});

    const MultiPoly& form() const { return form_; }
    int degree() const { return degree_; }
    const std::string& name() const { return name_; }
    bool contains(const PlanePoint& p) const;

    // Union of curves: product of forms.
    friend PlaneCurve operator+(const PlaneCurve& a, const PlaneCurve& b);

private:
    MultiPoly form_;
    int degree_;
    std::string name_;
};

struct SingularityCondition {
    PlanePoint point;
    // multiplicities[0] at the point, later entries at infinitely near points.
    std::vector<int> multiplicities;
    // directions[k] selects the point on the k-th exceptional curve; from the
    // second entry on it is expressed in the chart of the previous blow-up,
    // whose exceptional curve is the first coordinate axis x = 0.
    std::vector<Direction> directions;
};

// P, M, T lists in the bracketed style [[0,0],[2,2]], [[2],[2,2]],
// [[],[[1,1]]]; integers or "a/b" strings.
std::vector<SingularityCondition> parse_conditions(std::string_view points, std::string_view mults,
                                                   std::string_view dirs);
std::vector<PlanePoint> parse_points(std::string_view points);

// Local equation of the curve at p, in local_vars().
MultiPoly local_germ(const MultiPoly& form, const PlanePoint& p);

int multiplicity(const PlaneCurve& c, const PlanePoint& p);
// Multiplicities of the strict transform along the chain of infinitely
// near points selected by dirs (one more entry than dirs).
std::vector<int> multiplicity_sequence(const PlaneCurve& c, const PlanePoint& p,
                                       const std::vector<Direction>& dirs);
bool satisfies(const PlaneCurve& c, const SingularityCondition& cond);

// Canonical lowest-order form at p, in local_vars().
MultiPoly tangent_cone(const PlaneCurve& c, const PlanePoint& p);

// Points of the exceptional line: a rational direction, or a Galois orbit of
// directions (1, s) with s a root of slope_poly.
struct ExceptionalPoint {
    bool rational = true;
    Direction direction;
    UPoly slope_poly;
    // Intersection number of strict transform and exceptional line there.
    int intersection = 0;
    // Multiplicity of the strict transform; -1 when not computed (orbits of
    // degree > 1 with intersection > 1).
    int multiplicity = -1;
};

struct BlowUp {
    int multiplicity = 0;
    // Strict transforms in the charts (x, x*y) and (x*y, y), local_vars().
    MultiPoly chart_x, chart_y;
    std::vector<ExceptionalPoint> points;
};

BlowUp blow_up(const PlaneCurve& c, const PlanePoint& p);

struct ResolutionNode {
    std::string center;
    int multiplicity = 0;
    // Exceptional curves through the center, by creation index.
    std::vector<int> exceptionals;
    // Exceptional curve created here; -1 for leaves.
    int created = -1;
    // Number of conjugate centers represented (irrational leaves).
    int orbit = 1;
    // Direction selecting this center in its parent's chart; zero at the root
    // and for irrational leaves.
    Direction direction{0, 0};
    std::vector<std::size_t> children;
};

struct ResolutionGraph {
    std::vector<ResolutionNode> nodes;

    int blowups() const;
    // One sequence per leaf: multiplicities at the blown-up centers above it.
    std::vector<std::vector<int>> multiplicity_sequences() const;
};

std::string to_string(const ResolutionGraph& g);

ResolutionGraph resolution_graph(const PlaneCurve& c, const PlanePoint& p);

enum class SingularityKind { smooth, node, tacnode, ordinary_triple, other };
std::string to_string(SingularityKind k);

struct Classification {
    SingularityKind kind = SingularityKind::other;
    // Rational tangent directions, in order of appearance in the tangent cone.
    std::vector<Direction> tangents;
    ResolutionGraph graph;
};

Classification classify(const PlaneCurve& c, const PlanePoint& p);

// Basis of the degree-d forms satisfying every condition, canonical forms.
std::vector<MultiPoly> linear_system(int degree, const std::vector<SingularityCondition>& conditions);

int intersection_multiplicity_blowup(const PlaneCurve& c, const PlaneCurve& d, const PlanePoint& p);
int intersection_multiplicity_resultant(const PlaneCurve& c, const PlaneCurve& d, const PlanePoint& p);
// Both methods; IntegrityError if they disagree.
int intersection_multiplicity(const PlaneCurve& c, const PlaneCurve& d, const PlanePoint& p);

struct ExtensionComponent {
    FieldPtr field;
    // Coordinates in field; z is 0 or 1.
    std::vector<QuotientElement> coords;
    int degree() const { return field->degree(); }
};

struct SolutionSet {
    std::vector<PlanePoint> points;
    std::vector<ExtensionComponent> components;

    // Number of points over the algebraic closure.
    std::size_t size() const;
    bool contains(const PlanePoint& p) const;
};

std::string to_string(const SolutionSet& s);

SolutionSet common_points(const std::vector<PlaneCurve>& curves);
SolutionSet singular_locus(const PlaneCurve& c);

bool is_squarefree(const PlaneCurve& c);
bool is_coprime(const PlaneCurve& a, const PlaneCurve& b);

int absolute_factor_count(const PlaneCurve& c);

} // namespace covkit
