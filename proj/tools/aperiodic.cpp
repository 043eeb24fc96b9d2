// aperiodic -- command line front end: substitution analysis, Pisot spectra,
// cut-and-project sets, discrepancy profiles, bijection witnesses, 2D grids.
//
// Exit codes: 0 success, 1 input error, 2 symbolic verdict and empirical
// measurement disagree (reserved for CI drift detection).

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aperiodic/bdl.hpp"
#include "aperiodic/cutproject.hpp"
#include "aperiodic/morphisms.hpp"
#include "aperiodic/spectra.hpp"
#include "aperiodic/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace aperiodic;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitDisagree = 2;

struct OutputSink {
    std::string path;

    void write(const json& j) const {
        if (path.empty()) {
            std::cout << j.dump(2) << "\n";
        } else {
            std::ofstream out(path);
            if (!out) throw std::runtime_error("cannot open output file: " + path);
            out << j.dump(2) << "\n";
        }
    }
};

json elem_json(const QuadElem& x, unsigned precision) {
    return json{{"exact", x.str()}, {"decimal", x.decimal(precision)}};
}

std::pair<std::string, std::string> split_pair(const std::string& text, char sep) {
    auto pos = text.find(sep);
    if (pos == std::string::npos)
        throw std::invalid_argument("expected '" + std::string(1, sep) + "' in '" + text + "'");
    return {text.substr(0, pos), text.substr(pos + 1)};
}

std::pair<long, long> parse_digit_range(const std::string& text) {
    auto pos = text.find("..");
    if (pos == std::string::npos)
        throw std::invalid_argument("range must look like '0..1' or '-1..2'");
    return {std::stol(text.substr(0, pos)), std::stol(text.substr(pos + 2))};
}

SpectrumSpec spectrum_spec_from_flags(const std::string& family, long p, const std::string& sign,
                                      const std::string& digits) {
    PisotUnit::Family fam;
    if (family == "minus")
        fam = PisotUnit::Family::MinusOne;
    else if (family == "plus")
        fam = PisotUnit::Family::PlusOne;
    else
        throw std::invalid_argument("--family must be 'minus' (x^2-px-1) or 'plus' (x^2-px+1)");
    SpectrumSpec::Sign s;
    if (sign == "minus")
        s = SpectrumSpec::Sign::Minus;
    else if (sign == "plus")
        s = SpectrumSpec::Sign::Plus;
    else
        throw std::invalid_argument("--sign must be 'minus' or 'plus'");
    auto [m, M] = parse_digit_range(digits);
    return SpectrumSpec(PisotUnit::make(fam, p), s, m, M);
}

CapSpec cap_spec_from_flags(const std::string& eps, const std::string& eta,
                            const std::string& window) {
    QuadElem e = parse_quad_elem(eps);
    QuadElem h = parse_quad_elem(eta, e.field());
    auto [lo_s, hi_s] = split_pair(window, ',');
    QuadElem lo = parse_quad_elem(lo_s, e.field());
    QuadElem hi = parse_quad_elem(hi_s, e.field());
    return CapSpec(e, h, lo, hi);
}

void write_points_csv(const std::string& path, const CapSpec& spec,
                      const std::vector<CapPoint>& pts, unsigned precision) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "a,b,value,star\n";
    for (const auto& p : pts) {
        out << p.a << "," << p.b << "," << cap_value(spec, p).decimal(precision) << ","
            << cap_star(spec, p).decimal(precision) << "\n";
    }
}

std::vector<double> read_value_column(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open points file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty points file: " + path);
    int column = -1;
    int columns = 0;
    {
        std::stringstream hs(header);
        std::string cell;
        while (std::getline(hs, cell, ',')) {
            if (cell == "value") column = columns;
            ++columns;
        }
    }
    bool plain = (columns <= 1 && column < 0);
    std::vector<double> values;
    auto parse_line = [&](const std::string& line) {
        if (line.empty()) return;
        if (plain) {
            values.push_back(std::stod(line));
            return;
        }
        std::stringstream ls(line);
        std::string cell;
        int idx = 0;
        while (std::getline(ls, cell, ',')) {
            if (idx == column) values.push_back(std::stod(cell));
            ++idx;
        }
    };
    if (plain) {
        try {
            values.push_back(std::stod(header));
        } catch (...) {
            throw std::runtime_error("points file is neither csv-with-value nor a numeric list");
        }
    } else if (column < 0) {
        throw std::runtime_error("points file lacks a 'value' column");
    }
    std::string line;
    while (std::getline(in, line)) parse_line(line);
    std::sort(values.begin(), values.end());
    return values;
}

std::vector<double> make_horizons(const std::string& flag) {
    // either "doubling:k0..k1" or a comma list of values
    std::vector<double> hs;
    if (flag.rfind("doubling:", 0) == 0) {
        auto [lo, hi] = parse_digit_range(flag.substr(9));
        for (long k = lo; k <= hi; ++k) hs.push_back(std::pow(2.0, static_cast<double>(k)));
    } else {
        std::stringstream ss(flag);
        std::string cell;
        while (std::getline(ss, cell, ',')) hs.push_back(std::stod(cell));
    }
    if (hs.empty()) throw std::invalid_argument("no horizons given");
    return hs;
}

json profile_json(const DiscrepancyProfile& p) {
    json j;
    j["xi"] = p.xi;
    j["two_sided"] = p.two_sided;
    j["horizons"] = p.horizons;
    j["right_dev"] = p.right_dev;
    if (p.two_sided) j["left_dev"] = p.left_dev;
    return j;
}

void write_profile_csv(const std::string& path, const DiscrepancyProfile& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "N,right_dev,left_dev\n";
    char buf[128];
    for (size_t i = 0; i < p.horizons.size(); ++i) {
        double l = p.two_sided ? p.left_dev[i] : 0.0;
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f", p.horizons[i], p.right_dev[i], l);
        out << buf << "\n";
    }
}

// ---------------------------------------------------------------------------
// analyze-morphism
// ---------------------------------------------------------------------------

int cmd_analyze_morphism(const std::string& rules, const std::string& seed_text, bool auto_power,
                         long radius, const std::string& margin_text, unsigned precision,
                         const OutputSink& sink, const std::string& profile_out) {
    Morphism phi = parse_morphism(rules);
    json report;
    report["rules"] = rules;

    std::optional<FixedPointSeed> seed;
    if (!seed_text.empty()) seed = FixedPointSeed::parse(seed_text);
    FixedPointResult fp = fixed_point_window(phi, seed, static_cast<size_t>(radius), auto_power);
    report["power_used"] = fp.power_used;
    report["seed"] = fp.seed.str();
    Morphism effective = phi.power(fp.power_used);

    IntMatrix M = effective.incidence();
    json mj = json::array();
    for (size_t i = 0; i < M.size(); ++i) {
        json row = json::array();
        for (size_t jx = 0; jx < M.size(); ++jx) row.push_back(M(i, jx).get_str());
        mj.push_back(row);
    }
    report["incidence"] = mj;

    Poly cp = char_poly(M);
    json cpj = json::array();
    for (const auto& c : cp.coeffs()) cpj.push_back(to_string(c));
    report["char_poly_low_to_high"] = cpj;

    ModulusClassification cls = classify_moduli(cp);
    report["modulus_counts"] = {{"lt", cls.n_lt}, {"eq", cls.n_eq}, {"gt", cls.n_gt}};
    bool primitive = is_primitive(M);
    report["primitive"] = primitive;
    if (primitive) {
        switch (adamczewski_verdict(cls)) {
            case BalanceVerdict::Balanced: report["balance_verdict"] = "Balanced"; break;
            case BalanceVerdict::NotBalanced: report["balance_verdict"] = "NotBalanced"; break;
            default: report["balance_verdict"] = "Indeterminate";
        }
        PerronData perron = perron_data(M);
        json pj;
        pj["dominant"] = perron.dominant;
        if (perron.dominant_exact)
            pj["dominant_exact"] = elem_json(*perron.dominant_exact, precision);
        pj["frequencies"] = perron.frequencies;
        pj["lengths"] = perron.lengths;
        pj["residual"] = perron.residual;
        report["perron"] = pj;
    } else {
        report["balance_verdict"] = "Refused";
        report["balance_error"] = "incidence matrix is not primitive";
    }

    bool constructed = false;
    BdlConstruction bdl;
    try {
        bdl = construct_bdl_lengths(M, margin_text.empty()
                                           ? std::nullopt
                                           : std::optional<Rational>(parse_rational(margin_text)));
        constructed = true;
        json bj;
        bj["f"] = bdl.f;
        bj["eta"] = bdl.eta;
        bj["lengths"] = bdl.lengths;
        bj["stable_dim"] = bdl.stable_dim;
        bj["residual"] = bdl.residual;
        if (bdl.f_exact) {
            json fx = json::array();
            for (const auto& x : *bdl.f_exact) fx.push_back(elem_json(x, precision));
            bj["f_exact"] = fx;
            bj["eta_exact"] = elem_json(*bdl.eta_exact, precision);
        }
        report["bdl_construction"] = bj;
    } catch (const std::exception& e) {
        report["bdl_construction"] = {{"error", e.what()}};
    }

    int exit_code = kExitOk;
    if (constructed) {
        const WordWindow& u = fp.window;
        // empirical side: boundedness of f . Psi[n], and the discrepancy of
        // the constructed representation against eta Z
        double acc = 0, worst = 0;
        for (long n = -1; n >= u.min_index(); --n) {
            acc -= bdl.f[u.at(n)];
            worst = std::max(worst, std::abs(acc));
        }
        acc = 0;
        for (long n = 0; n < u.max_index(); ++n) {
            acc += bdl.f[u.at(n)];
            worst = std::max(worst, std::abs(acc));
        }
        std::vector<double> pts;
        pts.reserve(u.size() + 1);
        double left_x = 0;
        for (long n = -1; n >= u.min_index(); --n) left_x -= bdl.lengths[u.at(n)];
        double x = left_x;
        for (long n = u.min_index(); n <= u.max_index(); ++n) {
            pts.push_back(x);
            if (n < u.max_index()) x += bdl.lengths[u.at(n)];
        }
        json ej;
        ej["radius"] = radius;
        ej["max_abs_f_dot_parikh"] = worst;
        bool two_sided = u.origin() > 0;
        double coverage = two_sided ? std::min(std::abs(pts.front()), std::abs(pts.back()))
                                    : std::abs(pts.back());
        std::vector<double> horizons;
        for (double h = 8; h <= coverage; h *= 2) horizons.push_back(h);
        if (horizons.size() >= 4) {
            DiscrepancyProfile prof = discrepancy_profile(pts, bdl.eta, horizons, two_sided);
            ej["discrepancy"] = profile_json(prof);
            BoundednessReport rep = classify_boundedness(prof);
            ej["classification"] = to_string(rep.verdict);
            if (rep.verdict == BoundednessVerdict::LooksUnbounded) {
                ej["disagreement"] =
                    "symbolic construction succeeded but the profile looks unbounded";
                exit_code = kExitDisagree;
            }
            if (!profile_out.empty()) write_profile_csv(profile_out, prof);
        }
        report["empirical"] = ej;
    }

    sink.write(report);
    return exit_code;
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

json spectrum_decision_json(const SpectrumSpec& spec, unsigned precision) {
    SpectrumBdlVerdict v = bdl_decide(spec);
    json j;
    j["family"] = spec.unit.family == PisotUnit::Family::MinusOne ? "minus" : "plus";
    j["p"] = spec.unit.p;
    j["beta"] = elem_json(spec.unit.beta, precision);
    j["beta_conj"] = elem_json(spec.unit.beta_conj, precision);
    j["sign"] = spec.sign == SpectrumSpec::Sign::Minus ? "minus" : "plus";
    j["digits"] = {{"min", spec.digit_min}, {"max", spec.digit_max}};
    j["delone"] = spec.is_delone();
    j["bdl"] = v.bdl;
    j["reason"] = v.reason;
    if (spec.is_delone()) {
        KestenVerdict k = kesten_decide(cap_spec_of(spec));
        j["kesten"] = {{"bdl", k.bdl}, {"p", to_string(k.p)}, {"q", to_string(k.q)}};
        if (k.step) j["kesten"]["step"] = elem_json(*k.step, precision);
        if (v.bdl) j["xi"] = elem_json(average_lattice_xi(spec), precision);
    }
    return j;
}

int cmd_spectrum_gen(const SpectrumSpec& spec, const std::string& range, bool oracle,
                     unsigned max_degree, bool unsafe, unsigned precision, const std::string& out,
                     const std::string& gaps_out, const OutputSink& sink) {
    auto [lo_s, hi_s] = split_pair(range, ',');
    QuadField field = spec.unit.field;
    QuadElem lo = parse_quad_elem(lo_s, field);
    QuadElem hi = parse_quad_elem(hi_s, field);

    SpectrumSpec checked = validate(spec);
    CapSpec cap = cap_spec_of(checked);
    auto pts = generate(cap, lo, hi);
    if (!out.empty()) write_points_csv(out, cap, pts, precision);

    json j = spectrum_decision_json(checked, precision);
    j["points"] = pts.size();
    j["range"] = {{"lo", lo.str()}, {"hi", hi.str()}};

    if (pts.size() >= 2) {
        GapCoding coding = gap_code(cap, pts);
        json gj = json::array();
        for (const auto& g : coding.gaps) gj.push_back(elem_json(g, precision));
        j["gaps"] = gj;
        if (!gaps_out.empty()) {
            std::ofstream wf(gaps_out);
            if (!wf) throw std::runtime_error("cannot open output file: " + gaps_out);
            wf << coding.word.str() << "\n";
        }
    }

    int exit_code = kExitOk;
    if (oracle) {
        Integer bound_i = std::max(ceil_elem(lo.abs()), ceil_elem(hi.abs()));
        auto direct =
            generate_direct(checked, max_degree, Rational(bound_i), default_point_budget(), unsafe);
        std::erase_if(direct, [&](const QuadElem& x) { return x < lo || hi < x; });
        size_t mismatches = 0;
        size_t i = 0, k = 0;
        while (i < direct.size() || k < pts.size()) {
            if (i < direct.size() && k < pts.size()) {
                QuadElem dv = direct[i];
                QuadElem cv = cap_value(cap, pts[k]);
                if (dv == cv) {
                    ++i;
                    ++k;
                    continue;
                }
                ++mismatches;
                if (dv < cv)
                    ++i;
                else
                    ++k;
            } else if (i < direct.size()) {
                ++mismatches;
                ++i;
            } else {
                ++mismatches;
                ++k;
            }
        }
        j["oracle"] = {{"max_degree", max_degree},
                       {"direct_points", direct.size()},
                       {"mismatches", mismatches}};
        if (mismatches > 2) {
            j["oracle"]["disagreement"] = "generation paths differ beyond boundary slack";
            exit_code = kExitDisagree;
        }
    }
    sink.write(j);
    return exit_code;
}

// ---------------------------------------------------------------------------
// cap subcommands
// ---------------------------------------------------------------------------

int cmd_cap_gen(const CapSpec& spec, const std::string& range, unsigned precision,
                const std::string& out, const OutputSink& sink) {
    auto [lo_s, hi_s] = split_pair(range, ',');
    QuadElem lo = parse_quad_elem(lo_s, spec.eps.field());
    QuadElem hi = parse_quad_elem(hi_s, spec.eps.field());
    auto pts = generate(spec, lo, hi);
    if (!out.empty()) write_points_csv(out, spec, pts, precision);
    json j;
    j["eps"] = spec.eps.str();
    j["eta"] = spec.eta.str();
    j["window"] = {{"lo", spec.win_lo.str()}, {"hi", spec.win_hi.str()}};
    j["points"] = pts.size();
    if (pts.size() >= 2) {
        GapCoding coding = gap_code(spec, pts);
        json gj = json::array();
        for (const auto& g : coding.gaps) gj.push_back(elem_json(g, precision));
        j["gaps"] = gj;
    }
    sink.write(j);
    return kExitOk;
}

int cmd_cap_decide(const CapSpec& spec, unsigned precision, const OutputSink& sink) {
    KestenVerdict v = kesten_decide(spec);
    json j;
    j["eps"] = spec.eps.str();
    j["eta"] = spec.eta.str();
    j["window_length"] = elem_json(spec.window_length(), precision);
    j["bdl"] = v.bdl;
    j["p"] = to_string(v.p);
    j["q"] = to_string(v.q);
    if (v.step) j["step"] = elem_json(*v.step, precision);
    sink.write(j);
    return kExitOk;
}

int cmd_cap_transform(const CapSpec& spec, const std::string& matrix, unsigned precision,
                      const OutputSink& sink) {
    std::vector<long> m;
    std::stringstream ss(matrix);
    std::string cell;
    while (std::getline(ss, cell, ',')) m.push_back(std::stol(cell));
    if (m.size() != 4) throw std::invalid_argument("--matrix needs A,B,C,D");
    auto [ns, scale] = unimodular_transform(spec, m[0], m[1], m[2], m[3]);
    json j;
    j["eps"] = ns.eps.str();
    j["eta"] = ns.eta.str();
    j["window"] = {{"lo", ns.win_lo.str()}, {"hi", ns.win_hi.str()}};
    j["scale"] = elem_json(scale, precision);
    sink.write(j);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// discrepancy / witness / grid
// ---------------------------------------------------------------------------

int cmd_discrepancy(const std::string& points_file, const std::string& xi_text,
                    const std::string& horizons_flag, const std::string& out,
                    const OutputSink& sink) {
    auto pts = read_value_column(points_file);
    double xi = std::stod(xi_text);
    bool two_sided = !pts.empty() && pts.front() < 0;
    DiscrepancyProfile p = discrepancy_profile(pts, xi, make_horizons(horizons_flag), two_sided);
    if (!out.empty()) write_profile_csv(out, p);
    json j = profile_json(p);
    if (p.horizons.size() >= 4) {
        BoundednessReport rep = classify_boundedness(p);
        j["classification"] = to_string(rep.verdict);
        j["reason"] = rep.reason;
    }
    sink.write(j);
    return kExitOk;
}

int cmd_witness(const std::string& points_file, const std::string& xi_text, long count,
                const std::string& out, const OutputSink& sink) {
    auto pts = read_value_column(points_file);
    double xi = std::stod(xi_text);
    BijectionWitness w = bijection_witness(pts, xi, count);
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot open output file: " + out);
        f << "n,x_n,xi_n,displacement\n";
        char buf[160];
        for (long n = w.n_min; n <= w.n_max; ++n) {
            double x = w.points[static_cast<size_t>(n - w.n_min)];
            double ref = xi * static_cast<double>(n);
            std::snprintf(buf, sizeof buf, "%ld,%.9f,%.9f,%.9f", n, x, ref, x - ref);
            f << buf << "\n";
        }
    }
    json j;
    j["n_min"] = w.n_min;
    j["n_max"] = w.n_max;
    j["max_displacement"] = w.max_displacement;
    sink.write(j);
    return kExitOk;
}

int cmd_grid(const std::string& f1, const std::string& f2, const std::string& u_text,
             const std::string& v_text, double angle, double bound, const std::string& out,
             const OutputSink& sink) {
    auto l1 = read_value_column(f1);
    auto l2 = read_value_column(f2);
    auto [ux_s, uy_s] = split_pair(u_text, ',');
    double ux = std::stod(ux_s), uy = std::stod(uy_s);
    double vx, vy;
    if (!v_text.empty()) {
        auto [vx_s, vy_s] = split_pair(v_text, ',');
        vx = std::stod(vx_s);
        vy = std::stod(vy_s);
    } else {
        double norm = std::sqrt(ux * ux + uy * uy);
        vx = norm * std::cos(angle);
        vy = norm * std::sin(angle);
    }
    auto grid = grid_points(l1, l2, ux, uy, vx, vy, bound);
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot open output file: " + out);
        f << "x,y\n";
        char buf[96];
        for (const auto& g : grid) {
            std::snprintf(buf, sizeof buf, "%.9f,%.9f", g.x, g.y);
            f << buf << "\n";
        }
    }
    json j;
    j["points"] = grid.size();
    sink.write(j);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aperiodic: 1D aperiodic point sets and bounded-distance analysis"};
    app.require_subcommand(1);

    unsigned precision = 30;
    app.add_option("--precision", precision, "decimal digits for rendered values")
        ->check(CLI::Range(10u, 200u));

    OutputSink sink;
    app.add_option("--out-json", sink.path, "write the JSON report here instead of stdout");

    // analyze-morphism
    auto* am = app.add_subcommand("analyze-morphism", "balance verdict and BDL construction");
    std::string rules, seed_text, margin_text;
    bool auto_power = false;
    long radius = 20000;
    std::string profile_out;
    am->add_option("--rules", rules, "morphism DSL, e.g. 'A->AAB;B->AB'")->required();
    am->add_option("--seed", seed_text, "fixed point seed 'B|A' or '|A'");
    am->add_flag("--auto-power", auto_power, "search phi^k (k <= 3) for an admissible seed");
    am->add_option("--radius", radius, "window radius for empirical checks")
        ->check(CLI::PositiveNumber);
    am->add_option("--margin", margin_text, "positive rational margin for eta");
    am->add_option("--profile-out", profile_out, "write the discrepancy CSV here");

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "spectra of quadratic Pisot units");
    sp->require_subcommand(1);
    std::string family = "minus", sign = "minus", digits = "0..1";
    long unit_p = 1;
    auto add_spectrum_flags = [&](CLI::App* cmd) {
        cmd->add_option("--family", family, "'minus' for x^2-px-1, 'plus' for x^2-px+1");
        cmd->add_option("--p", unit_p, "coefficient p of the minimal polynomial");
        cmd->add_option("--sign", sign, "sign of the base alpha = +-beta");
        cmd->add_option("--digits", digits, "digit range m..M, e.g. '0..1' or '-1..2'");
    };
    auto* spg = sp->add_subcommand("gen", "generate spectrum points");
    add_spectrum_flags(spg);
    std::string range = "-10,10", points_out, gaps_out;
    bool oracle = false, unsafe = false;
    unsigned max_degree = 12;
    spg->add_option("--range", range, "value range lo,hi");
    spg->add_option("--out", points_out, "points CSV (a,b,value,star)");
    spg->add_option("--gaps-out", gaps_out, "gap-coding word file");
    spg->add_flag("--oracle", oracle, "cross-check against direct digit enumeration");
    spg->add_option("--max-degree", max_degree, "digit-polynomial degree for --oracle");
    spg->add_flag("--unsafe", unsafe, "allow max-degree beyond the guard");
    auto* spd = sp->add_subcommand("decide", "BDL verdict, reason and xi");
    add_spectrum_flags(spd);

    // cap
    auto* cap = app.add_subcommand("cap", "cut-and-project sets");
    cap->require_subcommand(1);
    std::string eps_text = "sqrt(5)-2", eta_text = "sqrt(5)+2", window = "0,1";
    auto add_cap_flags = [&](CLI::App* cmd) {
        cmd->add_option("--eps", eps_text, "internal slope, element DSL 'a/b + c/d*sqrt(D)'");
        cmd->add_option("--eta", eta_text, "physical slope, element DSL");
        cmd->add_option("--window", window, "acceptance window c,d (half-open [c,d))");
    };
    auto* capg = cap->add_subcommand("gen", "generate points");
    add_cap_flags(capg);
    std::string cap_range = "-10,10", cap_out;
    capg->add_option("--range", cap_range, "value range lo,hi");
    capg->add_option("--out", cap_out, "points CSV (a,b,value,star)");
    auto* capd = cap->add_subcommand("decide", "Kesten criterion");
    add_cap_flags(capd);
    auto* capt = cap->add_subcommand("transform", "unimodular symmetry");
    add_cap_flags(capt);
    std::string matrix = "1,0,0,1";
    capt->add_option("--matrix", matrix, "unimodular integer matrix A,B,C,D");

    // discrepancy / witness / grid
    auto* disc = app.add_subcommand("discrepancy", "profile points against xi Z");
    std::string points_file, xi_text = "1", horizons_flag = "doubling:4..14";
    std::string profile_csv;
    disc->add_option("--points", points_file, "CSV with a 'value' column or a plain list")
        ->required();
    disc->add_option("--xi", xi_text, "lattice step");
    disc->add_option("--horizons", horizons_flag, "'doubling:k0..k1' or comma list");
    disc->add_option("--out", profile_csv, "profile CSV (N,right_dev,left_dev)");

    auto* wit = app.add_subcommand("witness", "explicit bijection to xi Z");
    std::string wit_points, wit_xi = "1", wit_out;
    long wit_count = 1000;
    wit->add_option("--points", wit_points, "points file")->required();
    wit->add_option("--xi", wit_xi, "lattice step");
    wit->add_option("--count", wit_count, "pairs on each side of the origin");
    wit->add_option("--out", wit_out, "witness CSV (n,x_n,xi_n,displacement)");

    auto* grid = app.add_subcommand("grid", "2D grid from two 1D sets");
    std::string g1, g2, u_text = "1,0", v_text;
    double angle = 2 * M_PI / 5, bound = 20;
    grid->add_option("--points1", g1, "first 1D set")->required();
    grid->add_option("--points2", g2, "second 1D set")->required();
    grid->add_option("--u", u_text, "first generating vector x,y");
    grid->add_option("--v", v_text, "second generating vector x,y (overrides --angle)");
    grid->add_option("--angle", angle, "angle of v against u (radians)");
    grid->add_option("--bound", bound, "half-width of the clipping box");
    std::string grid_out;
    grid->add_option("--out", grid_out, "grid CSV (x,y)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (am->parsed())
            return cmd_analyze_morphism(rules, seed_text, auto_power, radius, margin_text,
                                        precision, sink, profile_out);
        if (spg->parsed())
            return cmd_spectrum_gen(spectrum_spec_from_flags(family, unit_p, sign, digits), range,
                                    oracle, max_degree, unsafe, precision, points_out, gaps_out,
                                    sink);
        if (spd->parsed()) {
            sink.write(spectrum_decision_json(
                spectrum_spec_from_flags(family, unit_p, sign, digits), precision));
            return kExitOk;
        }
        if (capg->parsed())
            return cmd_cap_gen(cap_spec_from_flags(eps_text, eta_text, window), cap_range,
                               precision, cap_out, sink);
        if (capd->parsed())
            return cmd_cap_decide(cap_spec_from_flags(eps_text, eta_text, window), precision,
                                  sink);
        if (capt->parsed())
            return cmd_cap_transform(cap_spec_from_flags(eps_text, eta_text, window), matrix,
                                     precision, sink);
        if (disc->parsed())
            return cmd_discrepancy(points_file, xi_text, horizons_flag, profile_csv, sink);
        if (wit->parsed()) return cmd_witness(wit_points, wit_xi, wit_count, wit_out, sink);
        if (grid->parsed())
            return cmd_grid(g1, g2, u_text, v_text, angle, bound, grid_out, sink);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
