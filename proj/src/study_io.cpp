#include "powiv/study_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "powiv/error.hpp"

namespace powiv {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value)
{
    throw Error(ErrorCode::InvalidConfig, "invalid value '" + std::string(value) + "' for " + std::string(key));
}

double parse_real(std::string_view key, std::string_view text)
{
    text = trim(text);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) bad_value(key, text);
    return value;
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text)
{
    text = trim(text);
    Int value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) bad_value(key, text);
    return value;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    const std::string v = lower(trim(text));
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    bad_value(key, text);
}

template <typename T, typename Parse>
std::vector<T> split_list(std::string_view text, Parse parse)
{
    std::vector<T> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse(trim(text.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::string optional_number(const std::optional<double>& v)
{
    return v ? format_number(*v) : std::string("NA");
}

nlohmann::json optional_json(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

} // namespace

TableFormat parse_table_format(std::string_view name)
{
    const std::string n = lower(trim(name));
    if (n == "csv") return TableFormat::CSV;
    if (n == "json") return TableFormat::JSON;
    throw Error(ErrorCode::UnsupportedFormat, "unsupported table format '" + std::string(name) + "'");
}

std::string format_number(double value)
{
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

std::vector<double> parse_real_list(std::string_view text)
{
    return split_list<double>(text, [](std::string_view item) {
        const double v = parse_real("list", item);
        if (!(v > 0.0)) bad_value("list", item);
        return v;
    });
}

std::vector<PowerKind> parse_kind_list(std::string_view text)
{
    return split_list<PowerKind>(text, [](std::string_view item) {
        const auto kind = parse_power_kind(item);
        if (!kind) bad_value("kinds", item);
        return *kind;
    });
}

std::string emit_table(const StudyTable& table, TableFormat format)
{
    if (table.cells.empty())
        throw Error(ErrorCode::InvalidArgument, "emit_table: no cells to emit");

    if (format == TableFormat::CSV) {
        std::string out = "kind,K,alpha,dnr,mean_sigma,std_sigma\n";
        for (const auto& c : table.cells) {
            out += to_string(c.kind);
            out += ',' + format_number(c.strike);
            out += ',' + format_number(c.alpha);
            out += ',' + format_number(c.dnr);
            out += ',' + optional_number(c.mean_sigma);
            out += ',' + optional_number(c.std_sigma);
            out += '\n';
        }
        return out;
    }

    // ordered_json keeps insertion order, so the column order is stable.
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& c : table.cells) {
        nlohmann::ordered_json row;
        row["kind"] = to_string(c.kind);
        row["K"] = c.strike;
        row["alpha"] = c.alpha;
        row["dnr"] = c.dnr;
        row["mean_sigma"] = optional_json(c.mean_sigma);
        row["std_sigma"] = optional_json(c.std_sigma);
        row["reps"] = c.reps;
        row["reps_with_solutions"] = c.reps_with_solutions;
        row["solved_rate"] = c.solved_rate;
        row["branches"] = {{"plus_root", c.branches.plus_root},
                           {"minus_root", c.branches.minus_root},
                           {"linear", c.branches.linear},
                           {"wrong_sign", c.branches.wrong_sign},
                           {"non_positive", c.branches.non_positive}};
        rows.push_back(std::move(row));
    }
    return rows.dump(2) + "\n";
}

void apply_config_entry(StudyConfig& config, std::string_view raw_key, std::string_view value)
{
    std::string key = lower(trim(raw_key));
    if (key.starts_with("--")) key.erase(0, 2);

    if (key == "spot" || key == "s0") config.s0 = parse_real(key, value);
    else if (key == "horizon") config.horizon = parse_real(key, value);
    else if (key == "sigma") config.true_sigma = parse_real(key, value);
    else if (key == "rate") config.rate = parse_real(key, value);
    else if (key == "steps") config.num_steps = parse_integer<int>(key, value);
    else if (key == "reps") config.num_reps = parse_integer<int>(key, value);
    else if (key == "seed") config.seed = parse_integer<std::uint64_t>(key, value);
    else if (key == "threads") config.threads = parse_integer<int>(key, value);
    else if (key == "alphas") config.alphas = parse_real_list(value);
    else if (key == "strikes") config.strikes = parse_real_list(value);
    else if (key == "kinds") config.kinds = parse_kind_list(value);
    else if (key == "clamp-discriminant") config.closed_form.repair_discriminant = parse_bool(key, value);
    else throw Error(ErrorCode::InvalidConfig, "unknown config key '" + std::string(raw_key) + "'");
}

StudyConfig load_study_config(const std::filesystem::path& path, StudyConfig base)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open config file " + path.string());

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::InvalidConfig,
                        path.string() + ":" + std::to_string(line_no) + ": expected key=value");
        apply_config_entry(base, text.substr(0, eq), text.substr(eq + 1));
    }
    base.validate();
    return base;
}

} // namespace powiv
