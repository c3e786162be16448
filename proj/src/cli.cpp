#include "powiv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>

#include "powiv/error.hpp"
#include "powiv/iv_closed_form.hpp"
#include "powiv/iv_reference.hpp"
#include "powiv/mc_study.hpp"
#include "powiv/pricing.hpp"
#include "powiv/study_io.hpp"

namespace powiv::cli {

namespace {

using json = nlohmann::ordered_json;

std::string six_digits(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void row(std::ostream& out, std::string_view label, const std::string& value)
{
    out << label;
    for (std::size_t i = label.size(); i < 16; ++i) out << ' ';
    out << value << '\n';
}

PowerKind kind_from_flag(const std::string& text)
{
    const auto kind = parse_power_kind(text);
    if (!kind) throw Error(ErrorCode::InvalidArgument, "--kind must be type1 or type2, got '" + text + "'");
    return *kind;
}

struct ContractFlags {
    std::string kind = "type1";
    double alpha = 1.0;
    double spot = 0.0;
    double strike = 0.0;
    double rate = 0.0;
    double tau = 0.0;
};

void add_contract_flags(CLI::App& cmd, ContractFlags& f, bool kind_and_alpha_required)
{
    auto* kind = cmd.add_option("--kind", f.kind, "Payoff convention: type1 or type2");
    auto* alpha = cmd.add_option("--alpha", f.alpha, "Power exponent");
    if (kind_and_alpha_required) {
        kind->required();
        alpha->required();
    }
    cmd.add_option("--spot", f.spot, "Spot price")->required();
    cmd.add_option("--strike", f.strike, "Strike price")->required();
    cmd.add_option("--rate", f.rate, "Risk-free rate")->required();
    cmd.add_option("--tau", f.tau, "Time to expiry")->required();
}

// ---------------------------------------------------------------------------

int cmd_price(const ContractFlags& f, double sigma, bool as_json, std::ostream& out)
{
    const PowerOptionSpec spec{f.alpha, f.strike, kind_from_flag(f.kind)};
    const MarketState market{f.spot, f.rate, f.tau, sigma};
    const PricingBreakdown p = price_power_call(market, spec);

    if (as_json) {
        json j;
        j["kind"] = to_string(spec.kind);
        j["alpha"] = spec.alpha;
        j["spot"] = market.spot;
        j["strike"] = spec.strike;
        j["rate"] = market.rate;
        j["tau"] = market.tau;
        j["sigma"] = sigma;
        j["price"] = p.price;
        j["d1"] = p.d1;
        j["d2"] = p.d2;
        out << j.dump() << '\n';
    } else {
        row(out, "price", six_digits(p.price));
        row(out, "d1", six_digits(p.d1));
        row(out, "d2", six_digits(p.d2));
    }
    return kOk;
}

struct IvFlags {
    double price = 0.0;
    bool check_iterative = false;
    bool corrado_miller = false;
    bool clamp_discriminant = false;
};

int cmd_iv(CLI::App& cmd, const ContractFlags& f, const IvFlags& iv, bool as_json, std::ostream& out,
           std::ostream& err)
{
    PowerOptionSpec spec{f.alpha, f.strike, PowerKind::Type1};
    if (iv.corrado_miller) {
        if (cmd.count("--alpha") && f.alpha != 1.0) {
            err << "--corrado-miller requires --alpha 1\n";
            return kUsage;
        }
        spec.alpha = 1.0;
    } else {
        if (!cmd.count("--kind") || !cmd.count("--alpha")) {
            err << (cmd.count("--kind") ? "--alpha" : "--kind") << " is required\n";
            return kUsage;
        }
        spec.kind = kind_from_flag(f.kind);
    }
    if (!(iv.price > 0.0)) {
        err << "--price must be > 0\n";
        return kUsage;
    }

    const MarketState market{f.spot, f.rate, f.tau, std::nullopt};
    const ClosedFormOptions options{iv.clamp_discriminant};
    const IVOutcome outcome = iv.corrado_miller ? corrado_miller_vanilla(market, spec.strike, iv.price, options)
                                                : implied_vol_closed_form(market, spec, iv.price, options);

    std::optional<IterativeIV> reference;
    std::optional<std::string> reference_error;
    if (iv.check_iterative) {
        try {
            reference = implied_vol_iterative(market, spec, iv.price);
        } catch (const Error& e) {
            reference_error = e.what();
        }
    }

    if (as_json) {
        json j;
        j["status"] = to_string(outcome.status);
        j["sigma"] = outcome.sigma ? json(*outcome.sigma) : json(nullptr);
        j["xi"] = outcome.xi ? json(*outcome.xi) : json(nullptr);
        j["branch"] = outcome.branch ? json(to_string(*outcome.branch)) : json(nullptr);
        if (iv.check_iterative) {
            j["iterative_sigma"] = reference ? json(reference->sigma) : json(nullptr);
            j["iterative_non_monotone"] = reference ? json(reference->non_monotone) : json(nullptr);
            j["gap"] = (reference && outcome.sigma) ? json(*outcome.sigma - reference->sigma) : json(nullptr);
        }
        out << j.dump() << '\n';
    } else {
        row(out, "status", std::string(to_string(outcome.status)));
        if (outcome.solved()) {
            row(out, "sigma", six_digits(*outcome.sigma));
            row(out, "xi", six_digits(*outcome.xi));
            row(out, "branch", std::string(to_string(*outcome.branch)));
        }
        if (reference) {
            row(out, "iterative_sigma", six_digits(reference->sigma));
            if (reference->non_monotone) row(out, "iterative_note", "price not monotone in sigma");
            if (outcome.sigma) row(out, "gap", six_digits(*outcome.sigma - reference->sigma));
        }
    }

    if (!outcome.solved()) {
        err << to_string(outcome.status) << '\n';
        return kNoSolution;
    }
    if (reference_error) {
        err << "iterative solver failed: " << *reference_error << '\n';
        return kOracle;
    }
    return kOk;
}

struct SimulateFlags {
    std::string config_path;
    std::string out_path;
    std::vector<std::pair<std::string, std::string>> overrides;
};

int cmd_simulate(CLI::App& cmd, const SimulateFlags& sim, bool as_json, std::ostream& out)
{
    StudyConfig config = sim.config_path.empty() ? StudyConfig{} : load_study_config(sim.config_path);
    for (const auto& [key, value] : sim.overrides)
        if (cmd.count("--" + key)) apply_config_entry(config, key, value);
    if (cmd.count("--clamp-discriminant")) config.closed_form.repair_discriminant = true;
    config.validate();

    const StudyTable table = run_study(config);
    const std::string text = emit_table(table, as_json ? TableFormat::JSON : TableFormat::CSV);

    if (sim.out_path.empty()) {
        out << text;
        return kOk;
    }
    std::ofstream file(sim.out_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::InvalidConfig, "cannot write --out " + sim.out_path);
    file << text;

    // Grid summary: one line per cell.
    out << "kind   K        alpha    dnr      mean_sigma  std_sigma\n";
    for (const auto& c : table.cells) {
        char line[160];
        std::snprintf(line, sizeof line, "%-6s %-8s %-8s %-8s %-11s %s\n", std::string(to_string(c.kind)).c_str(),
                      six_digits(c.strike).c_str(), six_digits(c.alpha).c_str(), six_digits(c.dnr).c_str(),
                      c.mean_sigma ? six_digits(*c.mean_sigma).c_str() : "NA",
                      c.std_sigma ? six_digits(*c.std_sigma).c_str() : "NA");
        out << line;
    }
    out << "wrote " << table.cells.size() << " rows to " << sim.out_path << '\n';
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Power call option pricing and implied volatility", "powiv"};
    app.require_subcommand(1);

    ContractFlags contract;
    double sigma = 0.0;
    bool as_json = false;
    auto* price = app.add_subcommand("price", "Price a power call");
    add_contract_flags(*price, contract, true);
    price->add_option("--sigma", sigma, "Volatility")->required();
    price->add_flag("--json", as_json, "Machine-readable output");

    IvFlags iv;
    auto* implied = app.add_subcommand("iv", "Closed-form implied volatility of a quote");
    add_contract_flags(*implied, contract, false);
    implied->add_option("--price", iv.price, "Observed call price")->required();
    implied->add_flag("--check-iterative", iv.check_iterative, "Compare with the iterative reference solver");
    implied->add_flag("--corrado-miller", iv.corrado_miller, "Vanilla (alpha = 1) Corrado-Miller form");
    implied->add_flag("--clamp-discriminant", iv.clamp_discriminant, "Replace a negative discriminant by zero");
    implied->add_flag("--json", as_json, "Machine-readable output");

    SimulateFlags sim;
    auto* simulate = app.add_subcommand("simulate", "Run the Monte-Carlo implied-volatility study");
    simulate->add_option("--config", sim.config_path, "key=value configuration file");
    simulate->add_option("--out", sim.out_path, "Output file (stdout when omitted)");
    simulate->add_flag("--json", as_json, "Emit JSON instead of CSV");
    simulate->add_flag("--clamp-discriminant", "Replace a negative discriminant by zero");
    sim.overrides.reserve(16);
    const std::pair<const char*, const char*> override_keys[] = {
        {"seed", "Base seed"},
        {"reps", "Replications per cell"},
        {"steps", "Observations per path"},
        {"strikes", "Comma-separated strikes"},
        {"alphas", "Comma-separated power exponents"},
        {"kinds", "Comma-separated payoff conventions"},
        {"spot", "Initial spot"},
        {"horizon", "Path horizon in years"},
        {"sigma", "True volatility of the simulated paths"},
        {"rate", "Risk-free rate"},
        {"threads", "Worker threads (0 = hardware concurrency)"},
    };
    for (const auto& [key, help] : override_keys) {
        sim.overrides.emplace_back(key, std::string{});
        simulate->add_option(std::string("--") + key, sim.overrides.back().second, help);
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*price) return cmd_price(contract, sigma, as_json, out);
        if (*implied) return cmd_iv(*implied, contract, iv, as_json, out, err);
        return cmd_simulate(*simulate, sim, as_json, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace powiv::cli
