// Batch front-end for the sphere-machine toolkit: Monte Carlo probes and
// sweeps, Bell/CHSH reports, frame-function defect searches, interferometer
// evaluations, and Kolmogorov-embeddability decisions. Every output embeds
// the resolved run manifest so results are self-describing and reproducible.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmachine/bell.hpp"
#include "qmachine/embeddability.hpp"
#include "qmachine/experiments.hpp"
#include "qmachine/gleason.hpp"
#include "qmachine/machine.hpp"
#include "qmachine/montecarlo.hpp"

namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr int kExitUsage = 2;
constexpr int kExitInputFile = 3;
constexpr int kExitInternal = 4;

using json = nlohmann::ordered_json;

std::string fmt12(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

json manifest(const std::string& subcommand, json params, const std::string& format) {
    json m;
    m["tool"] = "qm";
    m["version"] = kToolVersion;
    m["subcommand"] = subcommand;
    m["parameters"] = std::move(params);
    m["format"] = format;
    return m;
}

qmachine::UnitVector3 parse_direction(const std::string& text) {
    std::stringstream ss(text);
    double x, y, z;
    char c1, c2;
    if (!(ss >> x >> c1 >> y >> c2 >> z) || c1 != ',' || c2 != ',') {
        throw CLI::ValidationError("direction", "expected \"x,y,z\", got: " + text);
    }
    return qmachine::UnitVector3::normalized(x, y, z);
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.empty()) return grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
    return grid;
}

std::shared_ptr<const qmachine::gleason::FrameRule> parse_rule(const std::string& text) {
    if (text == "born2") return std::make_shared<qmachine::gleason::BornSquared>();
    if (text.rfind("abspow:", 0) == 0) {
        return std::make_shared<qmachine::gleason::AbsPower>(std::stod(text.substr(7)));
    }
    throw CLI::ValidationError("--rule", "unknown rule: " + text + " (use born2 or abspow:<p>)");
}

json probe_row(double epsilon, double theta, std::uint64_t samples, std::uint64_t seed,
               std::uint64_t shards) {
    using namespace qmachine;
    const UnitVector3 u = UnitVector3::normalized(0.0, 0.0, 1.0);
    const MachineState p{UnitVector3::normalized(std::sin(theta), 0.0, std::cos(theta))};
    const EpsilonMeasurement m(u, epsilon);
    const montecarlo::FrequencyEstimate est =
        montecarlo::estimate(m, p, {samples, seed, shards});
    json row;
    row["theta"] = fmt12(theta);
    row["epsilon"] = fmt12(epsilon);
    row["analytic_p1"] = fmt12(outcome_probabilities(m, p).p1());
    row["empirical_f1"] = fmt12(est.freq_o1);
    row["stderr"] = fmt12(est.standard_error);
    row["z"] = fmt12(est.z_vs_analytic);
    return row;
}

void emit(const json& man, const json& result, const std::string& format) {
    if (format == "json") {
        json out;
        out["manifest"] = man;
        out["result"] = result;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "# manifest: " << man.dump() << "\n";
        if (result.is_array() && !result.empty()) {
            const auto& first = result.front();
            bool head = true;
            for (auto it = first.begin(); it != first.end(); ++it) {
                std::cout << (head ? "" : ",") << it.key();
                head = false;
            }
            std::cout << "\n";
            for (const auto& row : result) {
                bool lead = true;
                for (auto it = row.begin(); it != row.end(); ++it) {
                    std::cout << (lead ? "" : ",") << it.value().get<std::string>();
                    lead = false;
                }
                std::cout << "\n";
            }
        } else if (result.is_array()) {
            std::cout << "theta,epsilon,analytic_p1,empirical_f1,stderr,z\n";
        } else {
            std::cout << result.dump(2) << "\n";
        }
    }
}

json lp_report(const qmachine::prob::LPResult& lp) {
    json r;
    r["feasible"] = lp.feasible;
    if (lp.feasible) {
        json witness = json::array();
        for (const auto& w : lp.witness) witness.push_back(fmt12(qmachine::to_double(w)));
        r["witness"] = witness;
    } else if (lp.violated_facet) {
        r["violated_facet"] = {{"name", lp.violated_facet->name},
                               {"margin", fmt12(lp.violated_facet->margin)}};
    }
    return r;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sphere-machine simulation and probability-structure toolkit"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));

    // probe: one Monte Carlo point against the analytic curve
    auto* probe = app.add_subcommand("probe", "single (epsilon, theta) Monte Carlo estimate");
    double pr_eps = 1.0, pr_theta = 0.0;
    std::uint64_t pr_samples = 100000, pr_seed = 1, pr_shards = 1;
    probe->add_option("--epsilon", pr_eps)->check(CLI::Range(0.0, 1.0));
    probe->add_option("--theta", pr_theta, "angle between state and measurement axis (radians)");
    probe->add_option("--samples", pr_samples)->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    probe->add_option("--seed", pr_seed);
    probe->add_option("--shards", pr_shards)->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));

    // sweep: cross-product grid, CSV columns theta,epsilon,analytic_p1,empirical_f1,stderr,z
    auto* sweep = app.add_subcommand(
        "sweep",
        "grid sweep over epsilon x theta; csv columns: theta,epsilon,analytic_p1,empirical_f1,stderr,z "
        "(12 significant digits)");
    std::string sw_eps_grid = "1", sw_theta_grid;
    std::uint64_t sw_samples = 100000, sw_seed = 1;
    sweep->add_option("--epsilon-grid", sw_eps_grid, "comma-separated epsilon values");
    sweep->add_option("--theta-grid", sw_theta_grid, "comma-separated theta values (radians)");
    sweep->add_option("--samples", sw_samples)->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    sweep->add_option("--seed", sw_seed);

    // bell: correlations, CHSH score, embeddability
    auto* bell = app.add_subcommand("bell", "singlet CHSH report for four settings");
    std::string b_a = "1,0,0", b_ap = "0,0,1", b_b, b_bp;
    bell->add_option("--a", b_a, "setting as \"x,y,z\"");
    bell->add_option("--aprime", b_ap);
    bell->add_option("--b", b_b)->required();
    bell->add_option("--bprime", b_bp)->required();

    // gleason: frame-defect search
    auto* gl = app.add_subcommand("gleason", "max frame defect over random triads");
    std::string gl_rule = "born2";
    std::uint64_t gl_trials = 10000, gl_seed = 1;
    std::string gl_u = "0.57735026919,0.57735026919,0.57735026919";
    gl->add_option("--rule", gl_rule, "born2 or abspow:<p>");
    gl->add_option("--trials", gl_trials)->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}));
    gl->add_option("--seed", gl_seed);
    gl->add_option("--u", gl_u, "reference ray as \"x,y,z\"");

    // interf: Mach-Zehnder / spin-rotation interferometer
    auto* interf = app.add_subcommand("interf", "interferometer detector statistics");
    bool with_b = true;
    double phase = 0.0, chi = 0.0;
    interf->add_flag("--with-b,!--no-b", with_b, "second beam splitter present");
    interf->add_option("--phase", phase, "extra path phase (radians)");
    interf->add_option("--chi", chi, "spin rotation angle on one path (radians)");

    // embed: scenario-file embeddability
    auto* embed = app.add_subcommand("embed", "Kolmogorov embeddability of a scenario file");
    std::string scenario_path;
    embed->add_option("--scenario", scenario_path, "scenario JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*probe) {
            const json man = manifest("probe",
                                      {{"epsilon", pr_eps}, {"theta", pr_theta},
                                       {"samples", pr_samples}, {"seed", pr_seed},
                                       {"shards", pr_shards}},
                                      format);
            emit(man, json::array({probe_row(pr_eps, pr_theta, pr_samples, pr_seed, pr_shards)}),
                 format);
        } else if (*sweep) {
            const json man = manifest("sweep",
                                      {{"epsilon_grid", sw_eps_grid}, {"theta_grid", sw_theta_grid},
                                       {"samples", sw_samples}, {"seed", sw_seed}},
                                      format);
            json rows = json::array();
            std::uint64_t point = 0;
            for (double eps : parse_grid(sw_eps_grid)) {
                for (double theta : parse_grid(sw_theta_grid)) {
                    rows.push_back(probe_row(eps, theta, sw_samples, sw_seed + point, 1));
                    ++point;
                }
            }
            emit(man, rows, format);
        } else if (*bell) {
            const auto a = parse_direction(b_a);
            const auto ap = parse_direction(b_ap);
            const auto b = parse_direction(b_b);
            const auto bp = parse_direction(b_bp);
            const json man = manifest(
                "bell", {{"a", b_a}, {"aprime", b_ap}, {"b", b_b}, {"bprime", b_bp}}, format);
            const auto demo = qmachine::experiments::epr_chsh_demo(a, ap, b, bp);
            json result;
            result["E_ab"] = fmt12(demo.e_ab);
            result["E_abprime"] = fmt12(demo.e_abp);
            result["E_aprimeb"] = fmt12(demo.e_apb);
            result["E_aprimebprime"] = fmt12(demo.e_apbp);
            result["S"] = fmt12(demo.s);
            result["embeddable"] = demo.embeddable;
            if (!demo.embeddable && demo.lp.violated_facet) {
                result["violated_facet"] = {{"name", demo.lp.violated_facet->name},
                                            {"margin", fmt12(demo.lp.violated_facet->margin)}};
            }
            emit(man, result, format);
        } else if (*gl) {
            const auto rule = parse_rule(gl_rule);
            const auto u = parse_direction(gl_u);
            const json man = manifest(
                "gleason", {{"rule", gl_rule}, {"trials", gl_trials}, {"seed", gl_seed}, {"u", gl_u}},
                format);
            const auto search = qmachine::gleason::max_frame_defect(*rule, u, gl_trials, gl_seed);
            json result;
            result["rule"] = rule->name();
            result["max_defect"] = fmt12(search.max_defect);
            json triad = json::array();
            for (const auto& axis : search.argmax.axes) {
                triad.push_back({fmt12(axis.x()), fmt12(axis.y()), fmt12(axis.z())});
            }
            result["argmax_triad"] = triad;
            emit(man, result, format);
        } else if (*interf) {
            const json man = manifest(
                "interf", {{"with_b", with_b}, {"phase", phase}, {"chi", chi}}, format);
            json result;
            if (chi != 0.0) {
                const auto stats = qmachine::experiments::rauch_interference(chi);
                result["model"] = "spin-rotation";
                result["p_d1"] = fmt12(stats.p_d1());
                result["p_d2"] = fmt12(stats.p_d2());
            } else {
                const auto stats = qmachine::experiments::wheeler_mz({with_b, phase, 0.0});
                result["model"] = "mach-zehnder";
                result["p_d1"] = fmt12(stats.p_d1());
                result["p_d2"] = fmt12(stats.p_d2());
            }
            emit(man, result, format);
        } else if (*embed) {
            std::ifstream in(scenario_path);
            if (!in) {
                std::cerr << "qm: cannot open scenario file: " << scenario_path << "\n";
                return kExitInputFile;
            }
            json man = manifest("embed", {{"scenario", scenario_path}}, format);
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                std::cerr << "qm: malformed scenario JSON: " << e.what() << "\n";
                return kExitInputFile;
            }
            const auto scenario = qmachine::prob::scenario_from_json(doc);
            const auto lp = qmachine::prob::kolmogorov_embeddable(scenario);
            if (lp.feasible && !qmachine::prob::witness_reproduces(scenario, lp.witness)) {
                std::cerr << "qm: internal check failed: witness does not reproduce constraints\n";
                return kExitInternal;
            }
            emit(man, lp_report(lp), format);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "qm: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qm: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "qm: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
