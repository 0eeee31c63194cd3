#pragma once

#include "covkit/lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace covkit {

// Elements of Z_2^r and characters are bit vectors; bit k refers to the
// k-th generator.  chi(sigma) = (-1)^<chi, sigma>.
using GroupElement = unsigned;
using Character = unsigned;

int character_value(Character chi, GroupElement sigma);
// "-1111": the value on each generator, in generator order.
std::string character_label(Character chi, int rank);
Character parse_character(const std::string& label);

struct BranchPiece {
    std::string name;
    DivisorClass cls;
    // Witness: a plane curve (strict transform) or an exceptional curve.
    std::optional<PlaneCurve> curve;
    int center = -1;
    std::vector<int> subtracted;
    bool reduced = true;
};

BranchPiece piece_from(const CatalogEntry& e);
BranchPiece strict_piece(std::string name, const PlaneCurve& c, const ConfigPtr& config);

class BuildingData {
public:
    BuildingData(ConfigPtr config, std::vector<std::string> generators);

    void assign(GroupElement sigma, std::vector<BranchPiece> pieces);

    const ConfigPtr& config() const { return config_; }
    int rank() const { return static_cast<int>(generators_.size()); }
    unsigned order() const { return 1u << generators_.size(); }
    const std::vector<std::string>& generators() const { return generators_; }
    std::string element_name(GroupElement sigma) const;
    GroupElement parse_element(const std::string& name) const;

    const std::vector<BranchPiece>& pieces(GroupElement sigma) const;
    DivisorClass branch_class(GroupElement sigma) const;
    // Nonzero elements with a nonempty branch divisor, ascending.
    std::vector<GroupElement> support() const;
    const BranchPiece* find_piece(const std::string& name) const;
    // Element whose branch divisor holds the named piece.
    GroupElement owner(const std::string& piece) const;
    bool generates() const;

private:
    ConfigPtr config_;
    std::vector<std::string> generators_;
    std::map<GroupElement, std::vector<BranchPiece>> branch_;
};

struct CharacterSheet {
    int rank = 0;
    // L[chi] for chi = 1 .. 2^r - 1; L[0] is the zero class.
    std::vector<DivisorClass> L;
};

CharacterSheet solve_character_sheet(const BuildingData& data);

struct PieceCheck {
    std::string name;
    bool class_exact = true;
    bool smooth = true;
    std::string detail;
};

struct PairCheck {
    std::string a, b;
    long pairing = 0;
    // Bezout audit, for two plane-curve witnesses.
    bool audited = false;
    long at_centers = 0;
    long degree_product = 0;
    bool disjoint() const { return pairing == 0 && (!audited || at_centers == degree_product); }
};

struct BranchReport {
    std::vector<PieceCheck> pieces;
    std::vector<PairCheck> pairs;
    bool smooth = true;
    bool disjoint = true;
    bool ok() const { return smooth && disjoint; }
};

BranchReport validate_branch(const BuildingData& data);

struct EulerResult {
    long chi = 0;
    // 2^r chi(O_X), then the term of each nontrivial character.
    std::vector<long> terms;
};

EulerResult euler_characteristic(const BuildingData& data, const CharacterSheet& sheet);

struct GenusResult {
    long pg = 0;
    long q = 0;
    // h0(K_X + L_chi) for chi = 1 .. 2^r - 1 (entry 0 unused).
    std::vector<H0Result> h0;
};

GenusResult geometric_genus(const BuildingData& data, const CharacterSheet& sheet, const NegativeCurveCatalog& catalog,
                            const H0Options& options = {});

// Quotient by the subgroup generated by h: the datum of the G/H-cover.
BuildingData quotient_datum(const BuildingData& data, const std::vector<GroupElement>& h);

// (1/2) psi^* of an integral class on X; pullbacks are stored doubled.
struct CoverClass {
    int rank = 0;
    DivisorClass twice;

    CoverClass& operator+=(const CoverClass& o);
    friend CoverClass operator+(CoverClass a, const CoverClass& b) { return a += b; }
    friend CoverClass operator*(long k, CoverClass a);
};

CoverClass pullback(const DivisorClass& D, const BuildingData& data);
// (1/2) psi^* D, for D an integral combination of branch pieces.
CoverClass half_pullback(const DivisorClass& D, const BuildingData& data);
CoverClass half_pullback(const std::vector<std::string>& pieces, const BuildingData& data);
long intersect(const CoverClass& a, const CoverClass& b);

struct CanonicalResult {
    Character chi0 = 0;
    CoverClass xi;
    CoverClass K;
    long K2 = 0;
};

// K = xi(chi0) + psi^*(K_X + L_chi0), xi(chi0) = (1/2) psi^* of the branch
// divisors on which chi0 is trivial.
CanonicalResult canonical_on_cover(const BuildingData& data, const CharacterSheet& sheet, Character chi0);

struct CurveFamily {
    std::string name;
    std::vector<std::string> pieces;
    CoverClass cls;
    long count = 0;
    long self_intersection = -1;
};

CurveFamily make_family(std::string name, const std::vector<std::string>& pieces, const BuildingData& data,
                        long count, long self_intersection);
// count * self = class^2 and, when K is given, K.class = count * (-2 - self).
void validate_family(const CurveFamily& f, const CoverClass* K = nullptr);

struct MinimalModelLedger {
    long start_K2 = 0;
    long K2 = 0;
    std::vector<CurveFamily> families;
};

MinimalModelLedger minimal_model(const CanonicalResult& canonical, const std::vector<CurveFamily>& families);

struct CanonicalGenerator {
    Character chi = 0;
    // Multiplicity of (1/2) psi^* P for each branch piece P.
    std::map<std::string, long> coefficients;
    // Plane curve components of the image after dropping contracted
    // families met with multiplicity one.
    std::vector<PlaneCurve> image;
    PlaneCurve image_curve() const;
};

struct AuditReport {
    std::vector<CanonicalGenerator> generators;
    bool count_ok = false;
    bool images_ok = false;
    SolutionSet common;
    bool common_ok = false;
    // blow-ups of the total union at each root center, and the allowance
    std::vector<std::pair<int, int>> blowups;
    bool resolution_ok = false;
    std::vector<std::pair<std::string, bool>> families;
    bool families_ok = false;
    std::vector<std::string> failures;
    bool base_point_free() const { return failures.empty(); }
};

// The canonical system is spanned by one divisor per character with
// h0(K_X + L_chi) = 1; their plane images are compared with `expected`.
AuditReport base_point_audit(const BuildingData& data, const GenusResult& genus, const NegativeCurveCatalog& catalog,
                             const std::vector<CurveFamily>& contracted, const std::vector<PlaneCurve>& expected);

} // namespace covkit
