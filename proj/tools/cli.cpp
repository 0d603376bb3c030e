#include "cli.hpp"

#include "triaxis/error.hpp"
#include "triaxis/format.hpp"
#include "triaxis/husimi.hpp"
#include "triaxis/majorana.hpp"
#include "triaxis/model.hpp"
#include "triaxis/parallel.hpp"
#include "triaxis/semiclassical.hpp"
#include "triaxis/spectrum.hpp"
#include "triaxis/squeezing.hpp"
#include "triaxis/states.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

namespace triaxis::cli {

namespace {

constexpr const char* formats_help = R"(Output formats (numbers use %.17g, lines end in \n):
  spectrum   CSV mu0,k,E_k,parity (parity +1 even, -1 odd block)
             with --esqpt: mu0,dos_peak,even_gap,even_gap_energy,odd_gap,
             odd_gap_energy,clustering
  squeeze    CSV <scan columns>,xi2,phi_opt,mean_x,mean_y,mean_z
             (xi2 and phi_opt are nan where the mean spin vanishes)
  husimi     CSV theta,phi,Q[,x,y,z], theta-major
  majorana   JSON {"two_j", "roots": [[re,im]...], "infinity_count",
             "stars": [[theta,phi]...], "max_residual"}
  phase      CSV t,theta,phi,energy
  survival   CSV t,P
  state      state file: "two_j = <int>" then 2j+1 lines "<re> <im>", ascending m
--format json wraps any table as {"columns": [...], "rows": [[...]...]}.
Ranges are written from:to:count; a single number is a one-point range.)";

struct Range {
    double from = 0.0;
    double to = 0.0;
    int count = 1;

    std::vector<double> values() const {
        std::vector<double> v(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i)
            v[static_cast<std::size_t>(i)] =
                count == 1 ? from : from + (to - from) * i / static_cast<double>(count - 1);
        return v;
    }
};

double parse_number(const std::string& s, const std::string& what) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || !std::isfinite(v))
        throw InvalidArgument(what + ": '" + s + "' is not a finite number");
    return v;
}

Range parse_range(const std::string& s, const std::string& what) {
    std::vector<std::string> parts;
    std::string cur;
    for (const char ch : s) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    Range r;
    if (parts.size() == 1) {
        r.from = r.to = parse_number(parts[0], what);
        return r;
    }
    if (parts.size() != 3)
        throw InvalidArgument(what + ": expected from:to:count, got '" + s + "'");
    r.from = parse_number(parts[0], what);
    r.to = parse_number(parts[1], what);
    int count = 0;
    const auto [ptr, ec] =
        std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
    if (ec != std::errc() || ptr != parts[2].data() + parts[2].size() || count < 1 ||
        count > 10000000)
        throw InvalidArgument(what + ": count must be a positive integer, got '" + parts[2] + "'");
    r.count = count;
    return r;
}

// Half-integer spin from --j or --two-j; exactly one must be given.
struct SpinArgs {
    std::string j;
    int two_j = -1;

    bool given() const { return !j.empty() || two_j >= 0; }

    HalfInteger resolve() const {
        if (!j.empty() && two_j >= 0)
            throw InvalidArgument("give either --j or --two-j, not both");
        if (!j.empty())
            return HalfInteger::from_value(parse_number(j, "--j"));
        if (two_j >= 0)
            return HalfInteger(two_j);
        throw InvalidArgument("spin required: pass --j <half-integer> or --two-j <int>");
    }
};

void add_spin(CLI::App* app, SpinArgs& s) {
    app->add_option("--j", s.j, "Spin as a decimal half-integer, e.g. 1.5");
    app->add_option("--two-j", s.two_j, "Spin as the integer 2j")->check(CLI::NonNegativeNumber);
}

struct OutputArgs {
    std::string format = "csv";
    std::string path;
};

void add_output(CLI::App* app, OutputArgs& o) {
    app->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app->add_option("--out", o.path, "Output file (default: standard output)");
}

// Where a state comes from: a file or one of the generators.
struct StateArgs {
    SpinArgs spin;
    std::string file;
    bool renormalize = false;
    std::string generator;
    std::string theta = "1.5707963267948966", phi = "0";
    std::string m;
    std::string mu = "0", nu = "0", mu0 = "0", mu1 = "0", mu2 = "0";
};

void add_state(CLI::App* app, StateArgs& s) {
    add_spin(app, s.spin);
    app->add_option("--state-file", s.file, "Read the state from a state file");
    app->add_flag("--renormalize", s.renormalize, "Accept and renormalize an unnormalized state file");
    app->add_option("--generator", s.generator, "coherent | dicke | oat | tact | triaxis")
        ->check(CLI::IsMember({"coherent", "dicke", "oat", "tact", "triaxis"}));
    app->add_option("--theta", s.theta, "coherent: polar angle (theta = 0 is |j,-j>)");
    app->add_option("--phi", s.phi, "coherent: azimuth");
    app->add_option("--m", s.m, "dicke: magnetic quantum number, e.g. -0.5");
    app->add_option("--mu", s.mu, "oat: twist mu");
    app->add_option("--nu", s.nu, "tact: twist nu");
    app->add_option("--mu0", s.mu0, "triaxis: mu0");
    app->add_option("--mu1", s.mu1, "triaxis: mu1");
    app->add_option("--mu2", s.mu2, "triaxis: mu2");
}

SpinState load_state(const StateArgs& s) {
    if (!s.file.empty() && !s.generator.empty())
        throw InvalidArgument("give either --state-file or --generator, not both");
    if (!s.file.empty()) {
        std::ifstream in(s.file);
        if (!in)
            throw InvalidArgument("cannot open state file '" + s.file + "'");
        SpinState psi = read_state(in, s.renormalize);
        if (s.spin.given() && s.spin.resolve() != psi.j())
            throw InvalidArgument("--j/--two-j disagrees with two_j in '" + s.file + "'");
        return psi;
    }
    if (s.generator.empty())
        throw InvalidArgument("state required: pass --state-file <path> or --generator <name>");
    const HalfInteger j = s.spin.resolve();
    if (s.generator == "coherent")
        return coherent_state(j, BlochDirection(parse_number(s.theta, "--theta"),
                                                parse_number(s.phi, "--phi")));
    if (s.generator == "dicke") {
        if (s.m.empty())
            throw InvalidArgument("dicke generator needs --m");
        const double m = parse_number(s.m, "--m");
        const double two_m = std::round(2.0 * m);
        if (std::abs(2.0 * m - two_m) > 1e-9 || std::abs(two_m) > j.two_j())
            throw InvalidArgument("--m must be a half-integer in [-j, j]");
        return dicke_state(j, static_cast<int>(two_m));
    }
    if (s.generator == "oat")
        return oat_state(j, parse_number(s.mu, "--mu"));
    if (s.generator == "tact")
        return tact_state(j, parse_number(s.nu, "--nu"));
    return triaxis_state(j, TwistParams{parse_number(s.mu0, "--mu0"), parse_number(s.mu1, "--mu1"),
                                        parse_number(s.mu2, "--mu2")});
}

void emit_table(std::ostream& os, const Table& t, const std::string& format) {
    if (format == "json")
        write_json(os, t);
    else
        write_csv(os, t);
}

struct Couple {
    std::string chi0 = "0", chi1 = "0", chi2 = "0";

    Couplings resolve() const {
        return {parse_number(chi0, "--chi0"), parse_number(chi1, "--chi1"),
                parse_number(chi2, "--chi2")};
    }
};

void add_couplings(CLI::App* app, Couple& c) {
    app->add_option("--chi0", c.chi0, "Coupling chi0");
    app->add_option("--chi1", c.chi1, "Coupling chi1");
    app->add_option("--chi2", c.chi2, "Coupling chi2");
}

// A validated command: everything checked, only the computation left.
using Job = std::function<void(std::ostream&)>;

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tri-axis spin squeezing toolkit", "triaxis"};
    app.footer(formats_help);
    app.require_subcommand(1, 1);
    app.fallthrough();
    unsigned threads = 1;
    app.add_option("--threads", threads, "Worker threads for scans (default 1)")
        ->check(CLI::PositiveNumber);

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "Spectra of the rotated Hamiltonian over mu0 = chi0/chi");
    SpinArgs sp_spin;
    OutputArgs sp_out;
    std::string sp_chi = "1", sp_mu0;
    bool sp_esqpt = false;
    int sp_bins = 0;
    add_spin(spectrum, sp_spin);
    add_output(spectrum, sp_out);
    spectrum->add_option("--chi", sp_chi, "Anisotropy scale chi > 0")->capture_default_str();
    spectrum->add_option("--mu0", sp_mu0, "mu0 range from:to:count")->required();
    spectrum->add_flag("--esqpt", sp_esqpt, "Emit per-point DOS peak, minimal gaps and clustering");
    spectrum->add_option("--dos-bins", sp_bins, "DOS bins for --esqpt (default round((2j+1)/4))")
        ->check(CLI::NonNegativeNumber);

    // squeeze
    auto* squeeze = app.add_subcommand("squeeze", "Squeezing parameter scans");
    SpinArgs sq_spin;
    OutputArgs sq_out;
    std::string sq_mode, sq_mu, sq_nu, sq_mu0 = "0", sq_mu1 = "0", sq_mu2 = "0";
    add_spin(squeeze, sq_spin);
    add_output(squeeze, sq_out);
    squeeze->add_option("--mode", sq_mode, "oat | tact | triaxis")
        ->required()
        ->check(CLI::IsMember({"oat", "tact", "triaxis"}));
    squeeze->add_option("--mu", sq_mu, "oat: mu range");
    squeeze->add_option("--nu", sq_nu, "tact: nu range");
    squeeze->add_option("--mu0", sq_mu0, "triaxis: mu0 value or range");
    squeeze->add_option("--mu1", sq_mu1, "triaxis: mu1 value or range");
    squeeze->add_option("--mu2", sq_mu2, "triaxis: mu2 value or range");

    // husimi
    auto* husimi = app.add_subcommand("husimi", "Husimi Q on a Gauss-Legendre x uniform grid");
    StateArgs hu_state;
    OutputArgs hu_out;
    int hu_nt = 64, hu_np = 128;
    bool hu_cart = false;
    add_state(husimi, hu_state);
    add_output(husimi, hu_out);
    husimi->add_option("--n-theta", hu_nt, "Gauss-Legendre nodes in cos(theta)")->capture_default_str();
    husimi->add_option("--n-phi", hu_np, "Uniform phi nodes")->capture_default_str();
    husimi->add_flag("--cartesian", hu_cart, "Add x, y, z = Q times the unit vector");

    // majorana
    auto* majorana = app.add_subcommand("majorana", "Majorana constellation");
    StateArgs ma_state;
    OutputArgs ma_out;
    ma_out.format = "json";
    add_state(majorana, ma_state);
    majorana->add_option("--format", ma_out.format, "json or csv (columns re,im,theta,phi)")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    majorana->add_option("--out", ma_out.path, "Output file (default: standard output)");

    // phase
    auto* phase = app.add_subcommand("phase", "Classical RK4 trajectory on the Bloch sphere");
    Couple ph_c;
    OutputArgs ph_out;
    std::string ph_theta, ph_phi = "0", ph_dt = "0.001";
    long ph_steps = 1000, ph_every = 1;
    add_couplings(phase, ph_c);
    add_output(phase, ph_out);
    phase->add_option("--theta0", ph_theta, "Initial polar angle in (0, pi)")->required();
    phase->add_option("--phi0", ph_phi, "Initial azimuth");
    phase->add_option("--dt", ph_dt, "Time step")->capture_default_str();
    phase->add_option("--steps", ph_steps, "Number of steps")->capture_default_str();
    phase->add_option("--record-every", ph_every, "Keep every n-th step")->capture_default_str();

    // survival
    auto* survival = app.add_subcommand("survival", "Survival probability |<psi0|exp(-iHt)|psi0>|^2");
    StateArgs su_state;
    Couple su_c;
    OutputArgs su_out;
    std::string su_t;
    add_state(survival, su_state);
    add_couplings(survival, su_c);
    add_output(survival, su_out);
    survival->add_option("--t", su_t, "Time range from:to:count")->required();

    // state
    auto* state = app.add_subcommand("state", "Write the amplitudes of a generated state");
    StateArgs st_state;
    std::string st_path;
    add_state(state, st_state);
    state->add_option("--out", st_path, "Output file (default: standard output)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : validation_error;
    }

    Job job;
    std::string out_path;
    try {
        if (*spectrum) {
            const HalfInteger j = sp_spin.resolve();
            const double chi = parse_number(sp_chi, "--chi");
            if (!(chi > 0.0))
                throw InvalidArgument("--chi must be positive");
            const Range r = parse_range(sp_mu0, "--mu0");
            if (r.count < 2)
                throw InvalidArgument("--mu0 needs at least 2 points");
            out_path = sp_out.path;
            job = [=, &err, fmt = sp_out.format](std::ostream& os) {
                const auto sweep = eigen_sweep(j, chi, r.from, r.to, r.count, threads);
                if (!sp_esqpt) {
                    if (fmt == "csv") {
                        write_spectrum_csv(os, sweep);
                        return;
                    }
                    Table t{{"mu0", "k", "E_k", "parity"}, {}};
                    for (std::size_t g = 0; g < sweep.mu0_grid.size(); ++g)
                        for (std::size_t k = 0; k < sweep.levels[g].size(); ++k)
                            t.rows.push_back({sweep.mu0_grid[g], static_cast<double>(k),
                                              sweep.levels[g][k],
                                              static_cast<double>(sweep.parity[g][k])});
                    write_json(os, t);
                    return;
                }
                const auto est = esqpt_estimate(sweep, sp_bins);
                Table t{{"mu0", "dos_peak", "even_gap", "even_gap_energy", "odd_gap",
                         "odd_gap_energy", "clustering"},
                        {}};
                const double nan = std::numeric_limits<double>::quiet_NaN();
                for (const auto& p : est.points)
                    t.rows.push_back({p.mu0, p.dos_peak,
                                      p.even_gap.lower_index >= 0 ? p.even_gap.size : nan,
                                      p.even_gap.lower_index >= 0 ? p.even_gap.energy : nan,
                                      p.odd_gap.lower_index >= 0 ? p.odd_gap.size : nan,
                                      p.odd_gap.lower_index >= 0 ? p.odd_gap.energy : nan,
                                      p.clustering});
                emit_table(os, t, fmt);
                if (est.clustering_region)
                    err << "clustering region: mu0 in [" << format_double(est.clustering_region->first)
                        << ", " << format_double(est.clustering_region->second)
                        << "], strongest at " << format_double(*est.strongest_clustering_mu0) << '\n';
                else
                    err << "clustering region: none\n";
            };
        } else if (*squeeze) {
            const HalfInteger j = sq_spin.resolve();
            if (j.two_j() < 1)
                throw InvalidArgument("squeezing needs j >= 1/2");
            std::vector<std::string> names;
            std::vector<std::vector<double>> points;
            if (sq_mode == "oat") {
                if (sq_mu.empty())
                    throw InvalidArgument("--mode oat needs --mu");
                names = {"mu"};
                for (double v : parse_range(sq_mu, "--mu").values())
                    points.push_back({v});
            } else if (sq_mode == "tact") {
                if (sq_nu.empty())
                    throw InvalidArgument("--mode tact needs --nu");
                names = {"nu"};
                for (double v : parse_range(sq_nu, "--nu").values())
                    points.push_back({v});
            } else {
                names = {"mu0", "mu1", "mu2"};
                const auto a = parse_range(sq_mu0, "--mu0").values();
                const auto b = parse_range(sq_mu1, "--mu1").values();
                const auto c = parse_range(sq_mu2, "--mu2").values();
                if (a.size() * b.size() * c.size() > 10000000)
                    throw InvalidArgument("triaxis scan grid exceeds 1e7 points");
                for (double x : a)
                    for (double y : b)
                        for (double z : c)
                            points.push_back({x, y, z});
            }
            out_path = sq_out.path;
            job = [=, &err, mode = sq_mode, fmt = sq_out.format](std::ostream& os) {
                Table t{names, {}};
                for (const char* c : {"xi2", "phi_opt", "mean_x", "mean_y", "mean_z"})
                    t.columns.emplace_back(c);
                t.rows.resize(points.size());
                std::vector<char> undefined(points.size(), 0);
                parallel_for(points.size(), threads, [&](std::size_t i) {
                    const auto& p = points[i];
                    const SpinState psi = mode == "oat"    ? oat_state(j, p[0])
                                          : mode == "tact" ? tact_state(j, p[0])
                                                           : triaxis_state(j, {p[0], p[1], p[2]});
                    std::vector<double> row = p;
                    const double nan = std::numeric_limits<double>::quiet_NaN();
                    try {
                        const auto r = squeezing_report(psi);
                        row.insert(row.end(), {r.xi2, r.phi_opt, r.mean_spin[0], r.mean_spin[1],
                                               r.mean_spin[2]});
                    } catch (const FrameUndefined&) {
                        const Vec3 m = mean_spin(psi);
                        row.insert(row.end(), {nan, nan, m[0], m[1], m[2]});
                        undefined[i] = 1;
                    }
                    t.rows[i] = std::move(row);
                });
                emit_table(os, t, fmt);
                std::size_t n_undef = 0;
                for (char u : undefined)
                    n_undef += static_cast<std::size_t>(u);
                if (n_undef > 0)
                    err << "note: mean spin vanishes at " << n_undef
                        << " scan point(s); xi2 and phi_opt written as nan\n";
            };
        } else if (*husimi) {
            if (hu_nt < 2 || hu_np < 2)
                throw InvalidArgument("--n-theta and --n-phi must be at least 2");
            const SpinState psi = load_state(hu_state);
            out_path = hu_out.path;
            job = [=, fmt = hu_out.format](std::ostream& os) {
                const auto g = q_grid(psi, hu_nt, hu_np, hu_cart, threads);
                if (fmt == "csv") {
                    write_q_csv(os, g);
                    return;
                }
                Table t{{"theta", "phi", "Q"}, {}};
                if (hu_cart)
                    t.columns.insert(t.columns.end(), {"x", "y", "z"});
                const auto np = static_cast<std::size_t>(g.n_phi);
                for (std::size_t i = 0; i < static_cast<std::size_t>(g.n_theta); ++i)
                    for (std::size_t k = 0; k < np; ++k) {
                        std::vector<double> row{g.theta_nodes[i], g.phi_nodes[k], g.values[i * np + k]};
                        if (hu_cart)
                            row.insert(row.end(), {g.x[i * np + k], g.y[i * np + k], g.z[i * np + k]});
                        t.rows.push_back(std::move(row));
                    }
                write_json(os, t);
            };
        } else if (*majorana) {
            const SpinState psi = load_state(ma_state);
            out_path = ma_out.path;
            job = [=, fmt = ma_out.format](std::ostream& os) {
                const auto c = to_sphere(find_roots(polynomial_from_state(psi)));
                if (fmt == "csv") {
                    Table t{{"re", "im", "theta", "phi"}, {}};
                    const double inf = std::numeric_limits<double>::infinity();
                    for (std::size_t i = 0; i < c.sphere_points.size(); ++i) {
                        const bool finite = i < c.finite_roots.size();
                        t.rows.push_back({finite ? c.finite_roots[i].real() : inf,
                                          finite ? c.finite_roots[i].imag() : inf,
                                          c.sphere_points[i].theta(), c.sphere_points[i].phi()});
                    }
                    write_csv(os, t);
                    return;
                }
                os << "{\"two_j\": " << c.j.two_j() << ",\n \"roots\": [";
                for (std::size_t i = 0; i < c.finite_roots.size(); ++i)
                    os << (i ? ", " : "") << '[' << json_number(c.finite_roots[i].real()) << ", "
                       << json_number(c.finite_roots[i].imag()) << ']';
                os << "],\n \"infinity_count\": " << c.infinity_count << ",\n \"stars\": [";
                for (std::size_t i = 0; i < c.sphere_points.size(); ++i)
                    os << (i ? ", " : "") << '[' << json_number(c.sphere_points[i].theta()) << ", "
                       << json_number(c.sphere_points[i].phi()) << ']';
                os << "],\n \"max_residual\": " << json_number(c.max_residual) << "}\n";
            };
        } else if (*phase) {
            const Couplings c = ph_c.resolve();
            const double th = parse_number(ph_theta, "--theta0");
            const double ph0 = parse_number(ph_phi, "--phi0");
            const double dt = parse_number(ph_dt, "--dt");
            if (!(dt > 0.0))
                throw InvalidArgument("--dt must be positive");
            if (!(th > 0.0 && th < std::acos(-1.0)))
                throw InvalidArgument("--theta0 must lie strictly between 0 and pi");
            if (ph_steps < 0 || ph_steps > 100000000)
                throw InvalidArgument("--steps must lie in [0, 1e8]");
            if (ph_every < 1)
                throw InvalidArgument("--record-every must be at least 1");
            out_path = ph_out.path;
            job = [=, &err, fmt = ph_out.format](std::ostream& os) {
                const auto tr = integrate_rk4({th, ph0, 0.0}, c, dt, ph_steps, ph_every);
                Table t{{"t", "theta", "phi", "energy"}, {}};
                for (std::size_t i = 0; i < tr.states.size(); ++i)
                    t.rows.push_back({tr.states[i].t, tr.states[i].theta, tr.states[i].phi,
                                      tr.energies[i]});
                emit_table(os, t, fmt);
                if (tr.hit_pole)
                    err << "note: trajectory stopped at a pole\n";
            };
        } else if (*survival) {
            const SpinState psi = load_state(su_state);
            const Couplings c = su_c.resolve();
            const auto times = parse_range(su_t, "--t").values();
            out_path = su_out.path;
            job = [=, fmt = su_out.format](std::ostream& os) {
                const auto p = survival_curve(psi, triaxis_hamiltonian(psi.j(), c), times);
                Table t{{"t", "P"}, {}};
                for (std::size_t i = 0; i < times.size(); ++i)
                    t.rows.push_back({times[i], p[i]});
                emit_table(os, t, fmt);
            };
        } else if (*state) {
            const SpinState psi = load_state(st_state);
            out_path = st_path;
            job = [=](std::ostream& os) { write_state(os, psi); };
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return validation_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return numerical_failure;
    }

    std::ostringstream buffer;
    try {
        job(buffer);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return validation_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return numerical_failure;
    }

    if (out_path.empty()) {
        out << buffer.str();
        out.flush();
        return ok;
    }
    std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open '" << out_path << "' for writing\n";
        return numerical_failure;
    }
    file << buffer.str();
    file.close();
    if (!file) {
        err << "error: writing '" << out_path << "' failed\n";
        return numerical_failure;
    }
    return ok;
}

} // namespace triaxis::cli
