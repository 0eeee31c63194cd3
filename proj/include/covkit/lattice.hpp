#pragma once

#include "covkit/curves.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace covkit {

// A center is a plane point, or a point on the exceptional curve of an
// earlier center selected by a direction in that center's local chart
// (same convention as SingularityCondition::directions).
struct Center {
    std::string name;
    std::optional<PlanePoint> point;
    int parent = -1;
    Direction direction{0, 0};
};

class BlowupConfiguration {
public:
    int add_point(std::string name, const PlanePoint& p);
    int add_infinitely_near(std::string name, int parent, const Direction& d);

    std::size_t size() const { return centers_.size(); }
    const Center& operator[](std::size_t i) const { return centers_[i]; }
    const std::vector<Center>& centers() const { return centers_; }
    int index(const std::string& name) const;
    // Proper point under center i, and the directions leading from it to i.
    const PlanePoint& root_point(std::size_t i) const;
    std::vector<Direction> path(std::size_t i) const;
    std::vector<int> children(std::size_t i) const;

private:
    std::vector<Center> centers_;
};

using ConfigPtr = std::shared_ptr<const BlowupConfiguration>;

// d*T - sum a_i E_i.
class DivisorClass {
public:
    DivisorClass() = default;
    DivisorClass(ConfigPtr config, long degree, std::vector<long> a);
    static DivisorClass zero(ConfigPtr config);
    static DivisorClass hyperplane(ConfigPtr config);
    // The total transform E_i of center i.
    static DivisorClass exceptional(ConfigPtr config, std::size_t i);
    // Row of the published table: d followed by the signed coefficients of E_i.
    static DivisorClass from_row(ConfigPtr config, const std::vector<long>& row);

    const ConfigPtr& config() const { return config_; }
    long degree() const { return d_; }
    const std::vector<long>& multiplicities() const { return a_; }
    long operator[](std::size_t i) const { return a_[i]; }
    std::vector<long> row() const;
    bool is_zero() const;

    DivisorClass& operator+=(const DivisorClass& o);
    DivisorClass& operator-=(const DivisorClass& o);
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(long k, DivisorClass a);
    friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.d_ == b.d_ && a.a_ == b.a_; }
    friend bool operator!=(const DivisorClass& a, const DivisorClass& b) { return !(a == b); }

private:
    void check_same(const DivisorClass& o) const;

    ConfigPtr config_;
    long d_ = 0;
    std::vector<long> a_;
};

// "(d; a0, a1, ...)"
std::string to_string(const DivisorClass& D);
// Sum of named basis elements, e.g. "T - E0 - 2E1'".
std::string to_symbolic(const DivisorClass& D);

long intersect(const DivisorClass& a, const DivisorClass& b);
DivisorClass canonical_class(const ConfigPtr& config);
long arithmetic_genus(const DivisorClass& D);
DivisorClass strict_class(const PlaneCurve& c, const ConfigPtr& config);
DivisorClass halve(const DivisorClass& D);

// Honest point conditions: every a_i >= 0 and no child above its parent.
bool is_realizable(const DivisorClass& D);
std::vector<SingularityCondition> conditions_of(const DivisorClass& D);

struct CatalogEntry {
    enum class Kind { exceptional, strict };
    std::string name;
    DivisorClass cls;
    Kind kind;
    // exceptional: E_center - sum of E_child over the listed children
    int center = -1;
    std::vector<int> subtracted;
    // strict: the plane curve
    std::optional<PlaneCurve> curve;
};

class NegativeCurveCatalog {
public:
    explicit NegativeCurveCatalog(ConfigPtr config) : config_(std::move(config)) {}

    // Strict transform of E_center minus its listed children.
    const CatalogEntry& add_exceptional(std::string name, int center, std::vector<int> subtracted = {});
    // Strict transform of a plane curve; the class comes from strict_class.
    const CatalogEntry& add_strict(std::string name, const PlaneCurve& c);

    const ConfigPtr& config() const { return config_; }
    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry* find(const std::string& name) const;

private:
    const CatalogEntry& push(CatalogEntry e);

    ConfigPtr config_;
    std::vector<CatalogEntry> entries_;
};

struct H0Result {
    bool computable = true;
    int dimension = 0;
    DivisorClass fixed;
    // Catalog entries removed, in order (with repetition).
    std::vector<std::string> removed;
    DivisorClass moving;
    // Basis of the plane system realizing the moving class, when computed.
    std::vector<MultiPoly> sections;
    std::string note;
};

struct H0Options {
    int reduction_bound = 1000;
    // Replaces linear_system, e.g. with a cached lookup.
    std::function<std::vector<MultiPoly>(int, const std::vector<SingularityCondition>&)> solver;
};

H0Result h0(const DivisorClass& D, const NegativeCurveCatalog& catalog, const H0Options& options = {});

} // namespace covkit
