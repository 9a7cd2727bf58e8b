// Command-line front end: compile network definition files to transition
// matrices, simulate, compute reachable sets, and search optimal controls.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "stpnet/closed_form.hpp"
#include "stpnet/dsl.hpp"
#include "stpnet/optimal.hpp"
#include "stpnet/reachability.hpp"

using nlohmann::json;
using namespace stpnet;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitCompute = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json logical_json(const LogicalMatrix& m) {
    return json{{"rows", m.rows()}, {"cols", m.col_indices()}};
}

json delta_json(const DeltaVector& v) { return json{{"dim", v.dim}, {"index", v.index}}; }

void emit_matrix(const LogicalMatrix& m, const std::string& format) {
    if (format == "delta-shorthand") {
        std::cout << m.shorthand() << "\n";
    } else if (format == "csv") {
        DenseMatrix d = m.dense();
        for (int r = 0; r < d.rows(); ++r) {
            for (int c = 0; c < d.cols(); ++c) {
                std::cout << (c ? "," : "") << d.at(r, c);
            }
            std::cout << "\n";
        }
    } else {
        std::cout << logical_json(m).dump() << "\n";
    }
}

Rat parse_rational(const std::string& s) {
    std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }
    std::size_t dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        long long den = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        return Rat(std::stoll(digits), den);
    }
    return Rat(std::stoll(s));
}

PayoffFunction load_payoff(const std::string& path, const CompiledNetwork& c) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    PayoffFunction p = PayoffFunction::zero(c.control_dim(), c.state_dim());
    std::vector<char> seen(p.table.size(), 0);
    std::string line;
    if (!std::getline(in, line) || line.rfind("u_index,x_index,payoff", 0) != 0) {
        throw std::runtime_error("payoff file must start with header u_index,x_index,payoff");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string ustr, xstr, pstr;
        if (!std::getline(ls, ustr, ',') || !std::getline(ls, xstr, ',') ||
            !std::getline(ls, pstr)) {
            throw std::runtime_error("malformed payoff row: " + line);
        }
        int iu = std::stoi(ustr), ix = std::stoi(xstr);
        if (iu < 1 || iu > p.control_dim || ix < 1 || ix > p.state_dim) {
            throw std::runtime_error("payoff row out of range: " + line);
        }
        p.at(iu, ix) = parse_rational(pstr);
        seen[static_cast<std::size_t>(iu - 1) * p.state_dim + ix - 1] = 1;
    }
    for (char s : seen) {
        if (!s) throw std::runtime_error("payoff table is not fully populated");
    }
    return p;
}

std::string rat_string(const Rat& r) {
    return std::to_string(r.numerator()) +
           (r.denominator() == 1 ? "" : "/" + std::to_string(r.denominator()));
}

int fail(int code, const std::string& kind, const std::string& message) {
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
    return code;
}

bool is_example_network(const NetworkSpec& s) {
    NetworkSpec e = closed_form::example_network();
    if (s.n != e.n || s.m != e.m) return false;
    for (int i = 0; i < s.n; ++i)
        if (!structural_equal(s.f[static_cast<std::size_t>(i)], e.f[static_cast<std::size_t>(i)])) return false;
    for (int j = 0; j < s.m; ++j)
        if (!structural_equal(s.g_update[static_cast<std::size_t>(j)], e.g_update[static_cast<std::size_t>(j)]))
            return false;
    return structural_equal(s.g, e.g);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean control network toolkit (semi-tensor product algebra)"};
    app.require_subcommand(1);

    std::string input, format = "json", show = "L", form = "general", mode = "free";
    std::string payoff_path, timing_str = "arrival";
    int t = 0, horizon = 0, x0 = 1, u0 = 1, xd = 1;
    bool constrained = false;

    auto* cmd_compile = app.add_subcommand("compile", "compile a network to transition matrices");
    cmd_compile->add_option("input", input)->required();
    cmd_compile->add_option("--show", show)->check(CLI::IsMember({"L", "G", "time"}));
    cmd_compile->add_option("--t", t);
    cmd_compile->add_option("--form", form)->check(CLI::IsMember({"general", "closed"}));
    cmd_compile->add_option("--format", format)->check(CLI::IsMember({"json", "delta-shorthand", "csv"}));

    auto* cmd_sim = app.add_subcommand("simulate", "roll out the network dynamics");
    cmd_sim->add_option("input", input)->required();
    cmd_sim->add_option("--x0", x0)->required();
    cmd_sim->add_option("--u0", u0)->required();
    cmd_sim->add_option("--T", horizon)->required();
    cmd_sim->add_option("--format", format)->check(CLI::IsMember({"json", "delta-shorthand", "csv"}));

    auto* cmd_reach = app.add_subcommand("reach", "reachable-set computation");
    cmd_reach->add_option("input", input)->required();
    cmd_reach->add_option("--mode", mode)->check(CLI::IsMember({"free", "paper-columns"}));
    cmd_reach->add_option("--x0", x0);
    cmd_reach->add_option("--u0", u0);
    cmd_reach->add_option("--t", t);
    cmd_reach->add_option("--xd", xd);
    bool decide = false;
    cmd_reach->add_flag("--decide", decide, "decide reachability of --xd instead of a set");

    auto* cmd_opt = app.add_subcommand("optimal", "average-payoff optimal control");
    cmd_opt->add_option("input", input)->required();
    cmd_opt->add_option("--payoff", payoff_path)->required();
    cmd_opt->add_option("--x0", x0)->required();
    cmd_opt->add_option("--u0", u0);
    cmd_opt->add_option("--timing", timing_str)->check(CLI::IsMember({"arrival", "departure"}));
    cmd_opt->add_flag("--constrained", constrained,
                      "controls follow their own update law instead of being free");

    auto* cmd_show = app.add_subcommand("show-matrix", "print a named structure matrix");
    std::string name;
    int sm = 2, sn = 2;
    cmd_show->add_option("--name", name)->required()->check(
        CLI::IsMember({"mc", "md", "mn", "mr", "swap", "phi"}));
    cmd_show->add_option("--m", sm);
    cmd_show->add_option("--n", sn);
    cmd_show->add_option("--format", format)->check(CLI::IsMember({"json", "delta-shorthand", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_show->parsed()) {
            LogicalMatrix m = name == "mc"   ? conjunction_matrix()
                              : name == "md" ? disjunction_matrix()
                              : name == "mn" ? negation_matrix()
                              : name == "mr" ? power_reduce_matrix()
                              : name == "swap" ? swap_matrix(sm, sn)
                                               : product_power_reduce(sn);
            emit_matrix(m, format);
            return 0;
        }

        NetworkSpec spec;
        try {
            spec = parse_network(read_file(input));
        } catch (const parse_error& e) {
            return fail(kExitParse, "parse", e.what());
        }
        CompiledNetwork c = compile_truth_table(spec);

        if (cmd_compile->parsed()) {
            if (form == "closed") {
                if (!is_example_network(spec)) {
                    return fail(kExitCompute, "compute",
                                "the closed factor form is transcribed for the bundled "
                                "example network only");
                }
                if (show == "G") {
                    emit_matrix(c.G, format);
                } else {
                    emit_matrix(closed_form::hat_time_matrix(show == "L" ? std::max(0, t - 1) : t),
                                format);
                }
                return 0;
            }
            CompiledNetwork fc = compile_factored(spec);
            if (fc.L != c.L || fc.G != c.G) {
                return fail(kExitCompute, "compute",
                            "internal cross-check failed: compilation paths disagree");
            }
            if (show == "L") {
                emit_matrix(t > 0 ? time_indexed_matrix(c, t - 1) : c.L, format);
            } else if (show == "G") {
                emit_matrix(c.G, format);
            } else {
                emit_matrix(time_indexed_matrix(c, t), format);
            }
            return 0;
        }

        if (cmd_sim->parsed()) {
            Trajectory tr = trajectory(c, DeltaVector(c.state_dim(), x0),
                                       DeltaVector(c.control_dim(), u0), horizon);
            if (format == "delta-shorthand") {
                for (std::size_t i = 0; i < tr.states.size(); ++i) {
                    std::cout << "t=" << i << " x=" << tr.states[i].to_string()
                              << " u=" << tr.controls[i].to_string() << "\n";
                }
            } else if (format == "csv") {
                std::cout << "t,x_index,u_index\n";
                for (std::size_t i = 0; i < tr.states.size(); ++i) {
                    std::cout << i << "," << tr.states[i].index << "," << tr.controls[i].index
                              << "\n";
                }
            } else {
                json js;
                for (const auto& s : tr.states) js["states"].push_back(delta_json(s));
                for (const auto& u : tr.controls) js["controls"].push_back(delta_json(u));
                std::cout << js.dump() << "\n";
            }
            return 0;
        }

        if (cmd_reach->parsed()) {
            if (decide) {
                auto [ok, wit] = controllable_to(c, DeltaVector(c.state_dim(), x0),
                                                 DeltaVector(c.state_dim(), xd));
                json js{{"reachable", ok}};
                js["witness_horizon"] = ok ? json(*wit) : json(nullptr);
                std::cout << js.dump() << "\n";
                return 0;
            }
            ReachableSet r = mode == "paper-columns"
                                 ? paper_column_reachable(c, DeltaVector(c.control_dim(), u0), t)
                                 : reachable_free_control(c, DeltaVector(c.state_dim(), x0), t);
            json js{{"horizon", r.horizon},
                    {"members", std::vector<int>(r.members.begin(), r.members.end())}};
            std::cout << js.dump() << "\n";
            return 0;
        }

        if (cmd_opt->parsed()) {
            PayoffFunction p = load_payoff(payoff_path, c);
            PayoffTiming timing =
                timing_str == "arrival" ? PayoffTiming::Arrival : PayoffTiming::Departure;
            OptimalPolicy pol =
                constrained
                    ? optimize_constrained(c, p, DeltaVector(c.state_dim(), x0),
                                           DeltaVector(c.control_dim(), u0), timing)
                    : optimize(c, p, DeltaVector(c.state_dim(), x0), timing);
            json cyc = json::array();
            for (auto [iu, ix] : pol.cycle) cyc.push_back(json::array({iu, ix}));
            json js{{"mean_payoff", rat_string(pol.mean_payoff)},
                    {"mean_payoff_double", boost::rational_cast<double>(pol.mean_payoff)},
                    {"transient", pol.transient},
                    {"cycle", cyc}};
            std::cout << js.dump() << "\n";
            return 0;
        }
    } catch (const size_cap_error& e) {
        return fail(kExitCompute, "size-cap", e.what());
    } catch (const dimension_error& e) {
        return fail(kExitCompute, "compute", e.what());
    } catch (const std::exception& e) {
        return fail(kExitCompute, "compute", e.what());
    }
    return kExitUsage;
}
