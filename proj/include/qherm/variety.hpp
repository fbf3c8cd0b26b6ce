// The two-parameter family of surfaces in PG(3,q^2), the Hermitian cone used
// to cap them, and the verification machinery: hyperplane intersection
// spectrum, two-intersection check, and the per-point line census.
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qherm/geometry.hpp"

namespace qherm {

struct VarietyParams {
    Fe a = 1; // any element of GF(q^2)*
    Fe b = 0; // any element of GF(q^2) \ GF(q), i.e. trace(b) != 0
    friend bool operator==(const VarietyParams&, const VarietyParams&) = default;
};

// Throws std::invalid_argument when (a,b) violates the constraints above.
void validate_params(const Field& f, VarietyParams p);
std::vector<VarietyParams> all_valid_params(const Field& f); // lex order by (a,b)

enum class SetLabel { b_surface, cone, m_variety, hermitian, generic };
const char* set_label_name(SetLabel l);

struct PointSet {
    SetLabel label = SetLabel::generic;
    std::optional<VarietyParams> params;
    std::vector<PackedPoint> pts; // sorted ascending, unique
    bool contains(PackedPoint p) const;
    std::size_t size() const { return pts.size(); }
};

// Degree-2q homogeneous form whose zero set is the base surface; evaluating
// on any scalar multiple of a point gives a scalar multiple, so membership
// is well defined on projective points.
Fe eval_surface(const Field& f, VarietyParams p, const Coords& v);
// Affine form in (x,y,z), i.e. the J=1 dehomogenization of eval_surface.
Fe eval_surface_affine(const Field& f, VarietyParams p, Fe x, Fe y, Fe z);

PointSet build_b_surface(const Field& f, VarietyParams p); // zero set of the form
PointSet build_cone(const Field& f);                       // J=0, N(X)+N(Y)=0
// The capped variety: affine part of the surface plus the whole cone.
PointSet build_m_variety(const Field& f, VarietyParams p);
// Nondegenerate comparison surface: sum of the four coordinate norms = 0.
PointSet build_hermitian(const Field& f);

struct SpectrumReport {
    std::size_t set_size = 0;
    std::map<std::size_t, std::size_t> hist; // intersection size -> #hyperplanes
};
SpectrumReport hyperplane_spectrum(const Field& f, const PointSet& s, unsigned threads = 0);

struct QHReport {
    bool ok = false;              // size and spectrum both as required
    bool size_ok = false;
    bool spectrum_ok = false;
    std::size_t size = 0;
    std::size_t expected_size = 0;
    std::size_t small_size = 0, large_size = 0; // the two admissible values
    SpectrumReport spectrum;
    std::string to_text() const;
};
// A set passes iff it has the family cardinality and every hyperplane meets
// it in one of the two admissible sizes q^3+1 or q^3+q^2+1.
QHReport check_two_intersection(const Field& f, const PointSet& s, unsigned threads = 0);

// All lines fully contained in s through p (p must belong to s, else throws).
std::vector<Line> lines_in_set_through(const Field& f, const PointSet& s, const Point& p);

// Census of full lines of the set through every point, grouped by location.
struct LineCensus {
    enum class Loc { affine, l_inf_rest, p_inf, inf_rest };
    struct Pencil {
        PackedPoint center = 0;
        Loc loc = Loc::affine;
        std::size_t n_lines = 0;
        std::size_t n_affine_lines = 0; // lines with an affine second point
        std::size_t n_infinite_lines = 0;
        bool coplanar = false;           // all lines lie in one plane
        Coords plane{0, 0, 0, 0};        // that plane when coplanar
        // For centers on l_inf \ {p_inf}: the plane predicted from the
        // parameters, X + Y = J / (m^q * trace(b)) for center (0,m,m,1),
        // degenerating to X + Y = 0 for (0,1,1,0). For p_inf: the plane at
        // infinity. Unset elsewhere.
        std::optional<Coords> predicted_plane;
        bool plane_matches = false; // coplanar and equal to the prediction
    };
    std::map<std::size_t, std::size_t> lines_per_affine_point;  // count -> #points
    std::map<std::size_t, std::size_t> lines_per_infinite_point;
    std::vector<Pencil> pencils; // every infinite point of s, ascending
    std::size_t n_lines_total = 0;
    bool all_infinite_pencils_ok = false; // coplanar and formula-checked where predicted
    std::string to_text() const;
};
LineCensus line_census(const Field& f, const PointSet& s, VarietyParams p);

// Plain-text point set file: "# PG(3,q^2) q=<q> modulus=<bits>" then one
// point per line as four decimal encodings, sorted ascending.
void write_point_set(std::ostream& os, const Field& f, const PointSet& s);
PointSet read_point_set(std::istream& is, const Field& f); // validates header and points

} // namespace qherm
