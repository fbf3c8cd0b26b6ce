// Batch front door for the PG(3,q^2) machinery: build varieties and run
// their verifications, compute stabilizer closures, decide equivalence with
// explicit witnesses, and generate/verify/export orthogonal arrays.
//
// Exit codes: 0 success, 1 a verification ran and reported a violation,
// 2 usage or input errors.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qherm/collineation.hpp"
#include "qherm/equivalence.hpp"
#include "qherm/field.hpp"
#include "qherm/kernels.hpp"
#include "qherm/oarray.hpp"
#include "qherm/parallel.hpp"
#include "qherm/variety.hpp"

namespace {

using nlohmann::json;
using namespace qherm;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Opts {
    unsigned q = 2;
    unsigned a = 0, b = 0;
    unsigned a2 = 0, b2 = 0;
    unsigned threads = 0;
    std::uint64_t cap = 4u << 20;
    bool semilinear = false;
    bool fast = false;
    bool json_out = false;
    bool simple = false;
    std::string kernels = "auto";
    std::string set_name = "m";
    std::string mode = "full";
    std::uint64_t pairs = 1000;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string in_path;
};

Field make_field(unsigned q) {
    switch (q) {
        case 2: return Field(1);
        case 4: return Field(2);
        case 8: return Field(3);
        case 16: return Field(4);
    }
    throw std::invalid_argument("--q must be one of 2, 4, 8, 16");
}

VarietyParams params_of(const Field& f, unsigned a, unsigned b) {
    if (a >= f.qq() || b >= f.qq())
        throw std::invalid_argument("--a/--b must be element encodings below q^2");
    VarietyParams p{static_cast<Fe>(a), static_cast<Fe>(b)};
    validate_params(f, p);
    return p;
}

void apply_kernels(const std::string& which) {
    if (which == "scalar") kern::set_backend(kern::Backend::scalar);
}

std::string spectrum_text(const std::map<std::size_t, std::size_t>& h) {
    std::ostringstream os;
    os << '{';
    bool sep = false;
    for (auto [sz, cnt] : h) {
        if (sep) os << ',';
        os << sz << ':' << cnt;
        sep = true;
    }
    os << '}';
    return os.str();
}

json hist_json(const std::map<std::size_t, std::size_t>& h) {
    json j = json::object();
    for (auto [k, v] : h) j[std::to_string(k)] = v;
    return j;
}

std::string poly_text(unsigned bits) {
    std::ostringstream os;
    bool sep = false;
    for (int d = 31; d >= 0; --d) {
        if (!(bits >> d & 1u)) continue;
        if (sep) os << '+';
        if (d == 0) os << '1';
        else if (d == 1) os << 'x';
        else os << "x^" << d;
        sep = true;
    }
    return os.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    return os;
}

int run_list_field(unsigned q) {
    Field f = make_field(q);
    std::cout << "q=" << f.q() << " q^2=" << f.qq() << " modulus=" << f.modulus() << " ("
              << poly_text(f.modulus()) << ") omega=" << static_cast<unsigned>(f.omega())
              << " eta=" << static_cast<unsigned>(f.eta())
              << " epsilon=" << static_cast<unsigned>(f.epsilon()) << "\n";
    std::cout << "enc\tlog\tfrob\ttrace\tnorm\tsubfield\n";
    for (unsigned e = 0; e < f.qq(); ++e) {
        Fe x = static_cast<Fe>(e);
        std::cout << e << '\t';
        if (e == 0) std::cout << '-';
        else std::cout << f.dlog(x);
        std::cout << '\t' << static_cast<unsigned>(f.frob(x)) << '\t'
                  << static_cast<unsigned>(f.trace(x)) << '\t'
                  << static_cast<unsigned>(f.norm(x)) << '\t'
                  << (f.in_subfield(x) ? "yes" : "no") << "\n";
    }
    return kOk;
}

int run_variety_build(const Opts& o, bool has_a, bool has_b) {
    Field f = make_field(o.q);
    PointSet s;
    if (o.set_name == "cone") {
        s = build_cone(f);
    } else if (o.set_name == "hermitian") {
        s = build_hermitian(f);
    } else {
        if (!has_a || !has_b)
            throw std::invalid_argument("--a and --b are required for --set " + o.set_name);
        VarietyParams p = params_of(f, o.a, o.b);
        s = (o.set_name == "b") ? build_b_surface(f, p) : build_m_variety(f, p);
    }
    auto os = open_out(o.out_path);
    write_point_set(os, f, s);
    if (!os.flush()) throw std::runtime_error("write failed: " + o.out_path);
    if (o.json_out) {
        json j;
        j["set"] = o.set_name;
        j["size"] = s.size();
        j["out"] = o.out_path;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "set=" << o.set_name << " size=" << s.size() << " out=" << o.out_path << "\n";
    }
    return kOk;
}

int run_check_qh(const Opts& o) {
    Field f = make_field(o.q);
    VarietyParams p = params_of(f, o.a, o.b);
    PointSet m = build_m_variety(f, p);
    QHReport rep = check_two_intersection(f, m, o.threads);
    if (o.json_out) {
        json j;
        j["size"] = rep.size;
        j["expected_size"] = rep.expected_size;
        j["spectrum"] = hist_json(rep.spectrum.hist);
        j["admissible"] = json::array({rep.small_size, rep.large_size});
        j["qh"] = rep.ok;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "size=" << rep.size << " spectrum=" << spectrum_text(rep.spectrum.hist)
                  << " QH=" << (rep.ok ? "true" : "false") << "\n";
    }
    return rep.ok ? kOk : kViolation;
}

int run_census(const Opts& o) {
    Field f = make_field(o.q);
    VarietyParams p = params_of(f, o.a, o.b);
    PointSet m = build_m_variety(f, p);
    LineCensus c = line_census(f, m, p);
    // Expected shape: every affine point on exactly one full line, and every
    // infinite pencil coplanar with the predicted plane where one is defined.
    bool affine_ok = c.lines_per_affine_point.size() == 1 && c.lines_per_affine_point.count(1) == 1;
    bool ok = affine_ok && c.all_infinite_pencils_ok;
    if (o.json_out) {
        json j;
        j["lines_total"] = c.n_lines_total;
        j["affine_points"] = hist_json(c.lines_per_affine_point);
        j["infinite_points"] = hist_json(c.lines_per_infinite_point);
        j["pencils_ok"] = c.all_infinite_pencils_ok;
        j["ok"] = ok;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << c.to_text() << "\nok=" << (ok ? "true" : "false") << "\n";
    }
    return ok ? kOk : kViolation;
}

ClosureResult closure_or_fail(const Field& f, VarietyParams p, const Opts& o) {
    auto gens = stabilizer_generators(f, p, o.semilinear);
    ClosureResult res = generate_group(f, gens, o.cap);
    if (res.capped)
        throw std::runtime_error("closure exceeded --cap " + std::to_string(o.cap) +
                                 "; raise the cap to continue");
    return res;
}

int run_group_order(const Opts& o) {
    Field f = make_field(o.q);
    VarietyParams p = params_of(f, o.a, o.b);
    ClosureResult res = closure_or_fail(f, p, o);
    if (o.json_out) {
        json j;
        j["order"] = res.elems.size();
        j["semilinear"] = o.semilinear;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << res.elems.size() << "\n";
    }
    return kOk;
}

int run_group_verify(const Opts& o) {
    Field f = make_field(o.q);
    VarietyParams p = params_of(f, o.a, o.b);
    ClosureResult res = closure_or_fail(f, p, o);
    PointSet m = build_m_variety(f, p);
    std::vector<PackedPoint> linf = l_inf_points(f);
    std::vector<Point> sigma_inf;
    for (const Point& pt : all_points(f))
        if (pt.c[0] == 0) sigma_inf.push_back(pt);
    const Point pinf = point_p_inf();

    struct Bad {
        std::uint64_t stab = 0, pinf = 0, linf = 0, sigma = 0;
    };
    std::vector<Bad> per_chunk(resolve_threads(o.threads));
    parallel_chunks(res.elems.size(), o.threads, [&](unsigned c, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const Collineation& g = res.elems[i];
            if (!stabilizes(f, g, m)) ++per_chunk[c].stab;
            if (pack(apply(f, g, pinf)) != pack(pinf)) ++per_chunk[c].pinf;
            for (PackedPoint lp : linf)
                if (!on_l_inf(apply(f, g, Point{unpack(lp)}))) {
                    ++per_chunk[c].linf;
                    break;
                }
            for (const Point& sp : sigma_inf)
                if (apply(f, g, sp).c[0] != 0) {
                    ++per_chunk[c].sigma;
                    break;
                }
        }
    });
    Bad bad;
    for (const Bad& b : per_chunk) {
        bad.stab += b.stab;
        bad.pinf += b.pinf;
        bad.linf += b.linf;
        bad.sigma += b.sigma;
    }
    bool ok = bad.stab == 0 && bad.pinf == 0 && bad.linf == 0 && bad.sigma == 0;
    if (o.json_out) {
        json j;
        j["order"] = res.elems.size();
        j["non_stabilizing"] = bad.stab;
        j["moving_p_inf"] = bad.pinf;
        j["moving_l_inf"] = bad.linf;
        j["moving_plane_at_infinity"] = bad.sigma;
        j["ok"] = ok;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "order=" << res.elems.size() << " stabilize_fail=" << bad.stab
                  << " p_inf_fail=" << bad.pinf << " l_inf_fail=" << bad.linf
                  << " plane_inf_fail=" << bad.sigma << " ok=" << (ok ? "true" : "false") << "\n";
    }
    return ok ? kOk : kViolation;
}

int run_group_sharp(const Opts& o) {
    Field f = make_field(o.q);
    VarietyParams p = params_of(f, o.a, o.b);
    std::vector<Collineation> trans;
    trans.reserve(static_cast<std::size_t>(f.qq()) * f.qq() * f.q());
    for (unsigned g1 = 0; g1 < f.qq(); ++g1)
        for (unsigned g2 = 0; g2 < f.qq(); ++g2)
            for (Fe s : f.subfield())
                trans.push_back(
                    make_translation(f, p, static_cast<Fe>(g1), static_cast<Fe>(g2), s));
    PointSet m = build_m_variety(f, p);
    std::vector<PackedPoint> affine;
    for (PackedPoint pp : m.pts)
        if (unpack(pp)[0] == 1) affine.push_back(pp);
    bool ok = check_sharp_transitivity(f, trans, affine);
    if (o.json_out) {
        json j;
        j["translations"] = trans.size();
        j["affine_points"] = affine.size();
        j["sharply_transitive"] = ok;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "translations=" << trans.size() << " affine_points=" << affine.size()
                  << " sharply_transitive=" << (ok ? "true" : "false") << "\n";
    }
    return ok ? kOk : kViolation;
}

void emit_witness(const Opts& o, const EquivalenceWitness& w) {
    if (!o.out_path.empty()) {
        auto os = open_out(o.out_path);
        write_witness(os, w);
        if (!os.flush()) throw std::runtime_error("write failed: " + o.out_path);
    }
    if (o.json_out) {
        json j;
        j["source"] = json::array({w.source.a, w.source.b});
        j["target"] = json::array({w.target.a, w.target.b});
        j["case"] = w.case_tag;
        j["map"] = to_line(w.map);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "source a=" << static_cast<unsigned>(w.source.a)
                  << " b=" << static_cast<unsigned>(w.source.b)
                  << " target a=" << static_cast<unsigned>(w.target.a)
                  << " b=" << static_cast<unsigned>(w.target.b) << " case=" << w.case_tag << "\n"
                  << "map " << to_line(w.map) << "\n";
    }
}

int run_equiv_reduce(const Opts& o) {
    Field f = make_field(o.q);
    VarietyParams p = params_of(f, o.a, o.b);
    EquivalenceWitness w = reduce_to_canonical(f, p);
    emit_witness(o, w);
    return kOk;
}

int run_equiv_find(const Opts& o, bool has_a2, bool has_b2) {
    if (!has_a2 || !has_b2) throw std::invalid_argument("equiv find requires --a2 and --b2");
    Field f = make_field(o.q);
    VarietyParams p1 = params_of(f, o.a, o.b);
    VarietyParams p2 = params_of(f, o.a2, o.b2);
    auto w = o.fast ? find_equivalence_fast(f, p1, p2) : find_equivalence(f, p1, p2);
    if (!w) {
        if (o.json_out)
            std::cout << json{{"equivalent", false}}.dump() << "\n";
        else
            std::cout << "equivalent=false\n";
        return kViolation;
    }
    emit_witness(o, *w);
    return kOk;
}

int run_equiv_classes(const Opts& o) {
    Field f = make_field(o.q);
    std::size_t n = parameter_class_count(f);
    if (o.json_out)
        std::cout << json{{"classes", n}}.dump() << "\n";
    else
        std::cout << "classes=" << n << "\n";
    return kOk;
}

int run_oa_build(const Opts& o) {
    Field f = make_field(o.q);
    VarietyParams p = params_of(f, o.a, o.b);
    OrthogonalArray arr = build_oa(f, p, o.threads);
    if (!o.out_path.empty()) {
        auto os = open_out(o.out_path);
        export_oa(os, arr);
        if (!os.flush()) throw std::runtime_error("write failed: " + o.out_path);
    }
    if (o.json_out) {
        json j;
        j["runs"] = arr.shape.runs;
        j["factors"] = arr.shape.factors;
        j["levels"] = arr.shape.levels;
        j["strength"] = arr.shape.strength;
        j["lambda"] = arr.shape.index;
        if (!o.out_path.empty()) j["out"] = o.out_path;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "N=" << arr.shape.runs << " k=" << arr.shape.factors
                  << " v=" << arr.shape.levels << " t=" << arr.shape.strength
                  << " lambda=" << arr.shape.index;
        if (!o.out_path.empty()) std::cout << " out=" << o.out_path;
        std::cout << "\n";
    }
    return kOk;
}

OrthogonalArray import_from_path(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::string l1, l2;
    if (!std::getline(is, l1) || !std::getline(is, l2))
        throw std::runtime_error("oa import: truncated header");
    unsigned q = 0, a = 0, b = 0, mod = 0;
    if (std::sscanf(l2.c_str(), "# q=%u a=%u b=%u modulus=%u", &q, &a, &b, &mod) != 4)
        throw std::runtime_error("oa import: bad parameter line");
    Field f = make_field(q);
    is.clear();
    is.seekg(0);
    return import_oa(is, f);
}

int run_oa_verify(const Opts& o, bool has_seed) {
    OrthogonalArray arr = import_from_path(o.in_path);
    OAVerifyReport rep;
    if (o.mode == "full") {
        rep = verify_strength2_full(arr, o.threads);
    } else {
        if (!has_seed) throw std::invalid_argument("--seed is required with --mode sampled");
        rep = verify_strength2_sampled(arr, o.pairs, o.seed, o.threads);
    }
    bool simple_ok = true;
    if (o.simple) simple_ok = check_simple(arr);
    bool ok = rep.ok && simple_ok;
    if (o.json_out) {
        json j;
        j["mode"] = o.mode;
        j["pairs_checked"] = rep.pairs_checked;
        j["lambda"] = rep.lambda;
        j["violations"] = rep.n_violations;
        if (o.simple) j["simple"] = simple_ok;
        j["ok"] = ok;
        json det = json::array();
        for (const auto& v : rep.violations) {
            json e;
            e["col_a"] = v.col_a;
            e["col_b"] = v.col_b;
            e["sym_a"] = v.sym_a;
            e["sym_b"] = v.sym_b;
            e["count"] = v.count;
            det.push_back(e);
        }
        j["details"] = det;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << rep.to_text();
        if (o.simple) std::cout << " simple=" << (simple_ok ? "true" : "false");
        std::cout << "\n";
        std::size_t shown = 0;
        for (const auto& v : rep.violations) {
            if (shown++ == 10) {
                std::cout << "...\n";
                break;
            }
            std::cout << "violation cols=(" << v.col_a << "," << v.col_b << ") syms=("
                      << static_cast<unsigned>(v.sym_a) << "," << static_cast<unsigned>(v.sym_b)
                      << ") count=" << v.count << "\n";
        }
    }
    return ok ? kOk : kViolation;
}

int run_oa_export(const Opts& o) {
    OrthogonalArray arr = import_from_path(o.in_path);
    auto os = open_out(o.out_path);
    export_oa(os, arr);
    if (!os.flush()) throw std::runtime_error("write failed: " + o.out_path);
    std::cout << "out=" << o.out_path << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-Hermitian varieties of PG(3,q^2), even q: construction, verification, "
                 "equivalence, orthogonal arrays"};
    app.require_subcommand(0, 1);

    Opts o;
    bool list_field = false;
    unsigned top_q = 2;
    app.add_flag("--list-field", list_field, "print the GF(q^2) element table and exit");
    app.add_option("--q", top_q, "field size for --list-field")
        ->check(CLI::IsMember({2u, 4u, 8u, 16u}));

    std::function<int()> action;
    auto add_q = [&](CLI::App* cmd) {
        cmd->add_option("--q", o.q, "field size q")
            ->required()
            ->check(CLI::IsMember({2u, 4u, 8u, 16u}));
    };
    auto add_params = [&](CLI::App* cmd, bool required = true) {
        auto* oa = cmd->add_option("--a", o.a, "parameter a, decimal encoding, nonzero");
        auto* ob = cmd->add_option("--b", o.b, "parameter b, decimal encoding, trace(b) != 0");
        if (required) {
            oa->required();
            ob->required();
        }
        return std::pair{oa, ob};
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--json", o.json_out, "emit a JSON report instead of text");
        cmd->add_option("--kernels", o.kernels, "byte-kernel backend")
            ->check(CLI::IsMember({"auto", "scalar"}));
    };
    auto add_threads = [&](CLI::App* cmd) {
        cmd->add_option("--threads", o.threads, "worker threads (0 = all available)");
    };

    auto* variety = app.add_subcommand("variety", "build and verify the point sets");
    {
        auto* cmd = variety->add_subcommand("build", "write a point set file");
        add_q(cmd);
        auto [oa_, ob_] = add_params(cmd, false);
        cmd->add_option("--set", o.set_name, "which set: b, cone, m, hermitian")
            ->check(CLI::IsMember({"b", "cone", "m", "hermitian"}));
        cmd->add_option("--out", o.out_path, "output path")->required();
        add_common(cmd);
        cmd->callback([&, oa_, ob_] {
            action = [&, oa_, ob_] {
                return run_variety_build(o, oa_->count() > 0, ob_->count() > 0);
            };
        });
    }
    {
        auto* cmd = variety->add_subcommand(
            "check-qh", "cardinality and hyperplane-spectrum check of the variety");
        add_q(cmd);
        add_params(cmd);
        add_threads(cmd);
        add_common(cmd);
        cmd->callback([&] { action = [&] { return run_check_qh(o); }; });
    }
    {
        auto* cmd = variety->add_subcommand("census", "full-line census through every point");
        add_q(cmd);
        add_params(cmd);
        add_common(cmd);
        cmd->callback([&] { action = [&] { return run_census(o); }; });
    }

    auto* group = app.add_subcommand("group", "stabilizer closure checks");
    {
        auto* cmd = group->add_subcommand("order", "closure order of the stabilizer generators");
        add_q(cmd);
        add_params(cmd);
        cmd->add_flag("--semilinear", o.semilinear, "include the semilinear generator");
        cmd->add_option("--cap", o.cap, "abort if the closure exceeds this size (0 = no cap)");
        add_common(cmd);
        cmd->callback([&] { action = [&] { return run_group_order(o); }; });
    }
    {
        auto* cmd = group->add_subcommand(
            "verify", "check every closure element stabilizes the variety and its frame");
        add_q(cmd);
        add_params(cmd);
        cmd->add_flag("--semilinear", o.semilinear, "include the semilinear generator");
        cmd->add_option("--cap", o.cap, "abort if the closure exceeds this size (0 = no cap)");
        add_threads(cmd);
        add_common(cmd);
        cmd->callback([&] { action = [&] { return run_group_verify(o); }; });
    }
    {
        auto* cmd = group->add_subcommand(
            "sharp", "sharp transitivity of the translation family on affine points");
        add_q(cmd);
        add_params(cmd);
        add_common(cmd);
        cmd->callback([&] { action = [&] { return run_group_sharp(o); }; });
    }

    auto* equiv = app.add_subcommand("equiv", "projective equivalence with explicit witnesses");
    {
        auto* cmd = equiv->add_subcommand("reduce", "reduce (a,b) to its canonical pair");
        add_q(cmd);
        add_params(cmd);
        cmd->add_option("--out", o.out_path, "write the witness to this path");
        add_common(cmd);
        cmd->callback([&] { action = [&] { return run_equiv_reduce(o); }; });
    }
    {
        auto* cmd = equiv->add_subcommand("find", "find a witness mapping (a,b) onto (a2,b2)");
        add_q(cmd);
        add_params(cmd);
        auto* oa2 = cmd->add_option("--a2", o.a2, "target parameter a");
        auto* ob2 = cmd->add_option("--b2", o.b2, "target parameter b");
        cmd->add_flag("--fast", o.fast, "canonical-chain construction instead of direct search");
        cmd->add_option("--out", o.out_path, "write the witness to this path");
        add_common(cmd);
        cmd->callback([&, oa2, ob2] {
            action = [&, oa2, ob2] {
                return run_equiv_find(o, oa2->count() > 0, ob2->count() > 0);
            };
        });
    }
    {
        auto* cmd = equiv->add_subcommand("classes", "number of equivalence classes over all (a,b)");
        add_q(cmd);
        add_common(cmd);
        cmd->callback([&] { action = [&] { return run_equiv_classes(o); }; });
    }

    auto* oa = app.add_subcommand("oa", "orthogonal arrays OA(q^5, q^4, q, 2)");
    {
        auto* cmd = oa->add_subcommand("build", "build the array, optionally writing it out");
        add_q(cmd);
        add_params(cmd);
        cmd->add_option("--out", o.out_path, "output path");
        add_threads(cmd);
        add_common(cmd);
        cmd->callback([&] { action = [&] { return run_oa_build(o); }; });
    }
    {
        auto* cmd = oa->add_subcommand("verify", "strength-2 verification of an array file");
        cmd->add_option("file", o.in_path, "array file")->required();
        cmd->add_option("--mode", o.mode, "full or sampled")
            ->check(CLI::IsMember({"full", "sampled"}));
        cmd->add_option("--pairs", o.pairs, "sampled mode: number of column pairs");
        auto* seed = cmd->add_option("--seed", o.seed, "sampled mode: RNG seed (required)");
        cmd->add_flag("--simple", o.simple, "also check that all rows are distinct");
        add_threads(cmd);
        add_common(cmd);
        cmd->callback(
            [&, seed] { action = [&, seed] { return run_oa_verify(o, seed->count() > 0); }; });
    }
    {
        auto* cmd = oa->add_subcommand("export", "re-emit an array file in canonical form");
        cmd->add_option("file", o.in_path, "array file")->required();
        cmd->add_option("--out", o.out_path, "output path")->required();
        add_common(cmd);
        cmd->callback([&] { action = [&] { return run_oa_export(o); }; });
    }

    try {
        app.parse(argc, argv);
        apply_kernels(o.kernels);
        if (action) return action();
        if (list_field) return run_list_field(top_q);
        std::cout << app.help();
        return kUsage;
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
