// Command line front end: scenario runner plus quick inspection of symbols.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "szego/inverse.hpp"
#include "szego/scenarios.hpp"

namespace {

szego::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw szego::ConfigError("cannot open '" + path + "'");
    szego::json j;
    in >> j;
    return j;
}

int cmd_run(const std::string& config_path) {
    const auto cfg = szego::ScenarioConfig::from_json(load_json(config_path));
    const int code = szego::run_scenario(cfg);
    std::cout << (code == 0 ? "PASS" : "FAIL") << " scenario " << cfg.scenario
              << " (report in " << cfg.out_dir << "/report.json)\n";
    return code;
}

int cmd_inspect(const std::string& symbol_path) {
    using namespace szego;
    const FourierSymbol u = parse_symbol(load_json(symbol_path)).to_fourier();
    const SpectralData sd = singular_spectrum(u);
    const Projections proj = eigen_projections(u, sd);
    const ConservationReport rep = ell(u, sd, proj);

    json out;
    out["trunc_dim"] = u.trunc_dim();
    out["Q"] = rep.Q;
    out["M"] = rep.M;
    out["J"] = {rep.J.real(), rep.J.imag()};
    out["hamiltonian"] = rep.hamiltonian;
    json ells = json::array();
    for (const auto& [s2, l] : rep.ells) ells.push_back({{"sigma_sq", s2}, {"ell", l}});
    out["ells"] = ells;
    out["ell_inf"] = rep.ell_inf;
    out["rank_h"] = sd.rank_h;
    out["rank_k"] = sd.rank_k;
    out["spectrum"] = spectral_to_json(sd);
    out["interlaced"] = interlacement_check(sd).ok;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_bracket(const std::string& symbol_path, const std::vector<std::string>& pairs,
                int n_f_pairs) {
    using namespace szego;
    const FourierSymbol u = parse_symbol(load_json(symbol_path)).to_fourier();

    if (pairs.empty()) {
        const BracketReport rep = involution_report(u, n_f_pairs);
        std::cout << bracket_report_to_json(rep).dump(2) << "\n";
        return rep.max_normalized <= 1e-5 ? 0 : 1;
    }

    auto named = [&](const std::string& name) -> Functional {
        if (name == "Q") return functional_mass();
        if (name == "M") return functional_momentum();
        if (name == "H") return functional_hamiltonian();
        if (name.rfind("ell", 0) == 0 && name != "ell_inf")
            return functional_ell(std::stoi(name.substr(3)));
        if (name == "ell_inf") return functional_ell_inf();
        if (name.rfind("sigma", 0) == 0) return functional_sigma_sq(std::stoi(name.substr(5)));
        if (name.rfind("F@", 0) == 0) return functional_generating_f(std::stod(name.substr(2)));
        throw ConfigError("unknown functional '" + name +
                          "' (use Q, M, H, ellK, ell_inf, sigmaK, F@x)");
    };
    json out = json::array();
    for (const auto& p : pairs) {
        const auto comma = p.find(',');
        if (comma == std::string::npos)
            throw ConfigError("pair must be 'name,name', got '" + p + "'");
        const Functional f = named(p.substr(0, comma));
        const Functional g = named(p.substr(comma + 1));
        out.push_back({{"pair", p}, {"bracket", bracket(f, g, u)}});
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"szego-lab: finite-rank quadratic Szego equation laboratory"};
    app.require_subcommand(1);

    std::string config_path, symbol_path;
    std::vector<std::string> pairs;
    int n_f_pairs = 3;

    auto* run = app.add_subcommand("run", "run a scenario from a JSON config");
    run->add_option("config", config_path, "scenario config JSON")->required();

    auto* inspect = app.add_subcommand("inspect", "conservation + spectral report of a symbol");
    inspect->add_option("symbol", symbol_path, "symbol JSON")->required();

    auto* bracket_cmd = app.add_subcommand("bracket", "Poisson brackets of named functionals");
    bracket_cmd->add_option("symbol", symbol_path, "symbol JSON")->required();
    bracket_cmd->add_option("--pairs", pairs, "comma pairs, e.g. ell1,ell2 sigma1,Q");
    bracket_cmd->add_option("--f-pairs", n_f_pairs, "number of F(x),F(y) pairs in the report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path);
        if (inspect->parsed()) return cmd_inspect(symbol_path);
        if (bracket_cmd->parsed()) return cmd_bracket(symbol_path, pairs, n_f_pairs);
    } catch (const szego::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const szego::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
