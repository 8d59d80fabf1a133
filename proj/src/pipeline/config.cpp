#include "creasegen/config.hpp"
#include "creasegen/sha256.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace creasegen::pipeline {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

template <typename T>
T parse_number(const std::string& text) {
    T value{};
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw std::invalid_argument("expected a number, got '" + text + "'");
    }
    return value;
}

bool parse_bool(const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw std::invalid_argument("expected true/false, got '" + text + "'");
}

struct Field {
    const char* key;
    bool runtime;
    std::function<std::string(const GenConfig&)> get;
    std::function<void(GenConfig&, const std::string&)> set;
};

template <typename T>
Field integer(const char* key, T GenConfig::*member) {
    return {key, false, [member](const GenConfig& c) { return std::to_string(c.*member); },
            [member](GenConfig& c, const std::string& v) { c.*member = parse_number<T>(v); }};
}

template <typename Getter>
Field real(const char* key, Getter access) {
    return {key, false, [access](const GenConfig& c) { return format_double(access(const_cast<GenConfig&>(c))); },
            [access](GenConfig& c, const std::string& v) { access(c) = parse_number<double>(v); }};
}

template <typename Getter>
Field flag(const char* key, Getter access) {
    return {key, false, [access](const GenConfig& c) { return access(const_cast<GenConfig&>(c)) ? "true" : "false"; },
            [access](GenConfig& c, const std::string& v) { access(c) = parse_bool(v); }};
}

template <typename Getter>
Field count(const char* key, Getter access) {
    return {key, false, [access](const GenConfig& c) { return std::to_string(access(const_cast<GenConfig&>(c))); },
            [access](GenConfig& c, const std::string& v) {
                using T = std::remove_reference_t<decltype(access(c))>;
                access(c) = parse_number<T>(v);
            }};
}

template <typename Enum>
Field choice(const char* key, Enum GenConfig::*member, std::vector<std::pair<std::string, Enum>> names) {
    return {key, false,
            [member, names](const GenConfig& c) {
                for (const auto& [name, value] : names) {
                    if (c.*member == value) {
                        return name;
                    }
                }
                return std::string("?");
            },
            [member, names](GenConfig& c, const std::string& v) {
                for (const auto& [name, value] : names) {
                    if (v == name) {
                        c.*member = value;
                        return;
                    }
                }
                throw std::invalid_argument("unknown value '" + v + "'");
            }};
}

template <typename Enum, typename Getter>
Field nested_choice(const char* key, Getter access, std::vector<std::pair<std::string, Enum>> names) {
    return {key, false,
            [access, names](const GenConfig& c) {
                for (const auto& [name, value] : names) {
                    if (access(const_cast<GenConfig&>(c)) == value) {
                        return name;
                    }
                }
                return std::string("?");
            },
            [access, names](GenConfig& c, const std::string& v) {
                for (const auto& [name, value] : names) {
                    if (v == name) {
                        access(c) = value;
                        return;
                    }
                }
                throw std::invalid_argument("unknown value '" + v + "'");
            }};
}

const std::vector<Field>& fields() {
    using geometry::HandPolicy;
    using geometry::WrinkleControl;
    static const std::vector<Field> table = {
        integer("num_identities", &GenConfig::num_identities),
        integer("samples_per_identity", &GenConfig::samples_per_identity),
        integer("canvas_size", &GenConfig::canvas_size),
        integer("master_seed", &GenConfig::master_seed),
        nested_choice<HandPolicy>("hand", [](GenConfig& c) -> HandPolicy& { return c.geometry.hand; },
                                  {{"random", HandPolicy::Random}, {"left", HandPolicy::Left}, {"right", HandPolicy::Right}}),
        flag("principals.enabled", [](GenConfig& c) -> bool& { return c.geometry.principals_enabled; }),
        count("principals.min", [](GenConfig& c) -> int& { return c.geometry.principal_min; }),
        count("principals.max", [](GenConfig& c) -> int& { return c.geometry.principal_max; }),
        real("principals.edge_margin", [](GenConfig& c) -> double& { return c.geometry.edge_margin; }),
        flag("wrinkles.enabled", [](GenConfig& c) -> bool& { return c.geometry.wrinkles_enabled; }),
        count("wrinkles.min", [](GenConfig& c) -> int& { return c.geometry.wrinkle_min; }),
        count("wrinkles.max", [](GenConfig& c) -> int& { return c.geometry.wrinkle_max; }),
        nested_choice<WrinkleControl>("wrinkles.control", [](GenConfig& c) -> WrinkleControl& { return c.geometry.wrinkle_control; },
                                      {{"rectangle", WrinkleControl::Rectangle}, {"uniform", WrinkleControl::Uniform}}),
        real("truncation.t0_min", [](GenConfig& c) -> double& { return c.geometry.t0_range.lo; }),
        real("truncation.t0_max", [](GenConfig& c) -> double& { return c.geometry.t0_range.hi; }),
        real("truncation.t1_min", [](GenConfig& c) -> double& { return c.geometry.t1_range.lo; }),
        real("truncation.t1_max", [](GenConfig& c) -> double& { return c.geometry.t1_range.hi; }),
        real("noise.mean", [](GenConfig& c) -> double& { return c.appearance.noise.mean; }),
        real("noise.std_principal", [](GenConfig& c) -> double& { return c.appearance.noise.std_principal; }),
        real("noise.std_wrinkle", [](GenConfig& c) -> double& { return c.appearance.noise.std_wrinkle; }),
        real("width.principal_min", [](GenConfig& c) -> double& { return c.appearance.principal_width.lo; }),
        real("width.principal_max", [](GenConfig& c) -> double& { return c.appearance.principal_width.hi; }),
        real("width.wrinkle_min", [](GenConfig& c) -> double& { return c.appearance.wrinkle_width.lo; }),
        real("width.wrinkle_max", [](GenConfig& c) -> double& { return c.appearance.wrinkle_width.hi; }),
        real("color.channel_min", [](GenConfig& c) -> double& { return c.appearance.color_channel.lo; }),
        real("color.channel_max", [](GenConfig& c) -> double& { return c.appearance.color_channel.hi; }),
        real("blur.probability", [](GenConfig& c) -> double& { return c.appearance.blur_probability; }),
        real("blur.sigma_max", [](GenConfig& c) -> double& { return c.appearance.blur_sigma_max; }),
        choice<BackgroundMode>("background.mode", &GenConfig::background_mode,
                               {{"procedural", BackgroundMode::Procedural},
                                {"directory", BackgroundMode::Directory},
                                {"none", BackgroundMode::None}}),
        {"background.dir", false, [](const GenConfig& c) { return c.background_dir; },
         [](GenConfig& c, const std::string& v) { c.background_dir = v; }},
        integer("background.pool_size", &GenConfig::procedural_pool_size),
        real("render.flatten_tolerance", [](GenConfig& c) -> double& { return c.flatten_tolerance; }),
        integer("png.compression", &GenConfig::png_compression),
        {"output_dir", true, [](const GenConfig& c) { return c.output_dir.generic_string(); },
         [](GenConfig& c, const std::string& v) { c.output_dir = v; }},
        {"workers", true, [](const GenConfig& c) { return std::to_string(c.workers); },
         [](GenConfig& c, const std::string& v) { c.workers = parse_number<unsigned>(v); }},
    };
    return table;
}

} // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : ConfigError([&] {
          std::string msg = "invalid configuration:";
          for (const auto& v : violations) {
              msg += "\n  - " + v;
          }
          return msg;
      }()),
      violations_(std::move(violations)) {}

GenConfig parse_config(std::string_view text) {
    std::map<std::string, const Field*> by_key;
    for (const Field& f : fields()) {
        by_key.emplace(f.key, &f);
    }

    GenConfig config;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string content = trim(line);
        if (content.empty()) {
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
        }
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        const auto it = by_key.find(key);
        if (it == by_key.end()) {
            throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'", line_no);
        }
        try {
            it->second->set(config, value);
        } catch (const std::invalid_argument& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + key + ": " + e.what(), line_no);
        }
    }
    return config;
}

GenConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path.string() + ": cannot open config");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string canonical_config(const GenConfig& config, bool include_runtime) {
    std::string out;
    for (const Field& f : fields()) {
        if (f.runtime && !include_runtime) {
            continue;
        }
        out += f.key;
        out += " = ";
        out += f.get(config);
        out += '\n';
    }
    return out;
}

std::string config_hash(const GenConfig& config) {
    return sha256_hex(canonical_config(config, false));
}

std::vector<std::string> validate_config(const GenConfig& c) {
    std::vector<std::string> v;
    const auto& g = c.geometry;
    const auto& a = c.appearance;
    auto finite = [](double x) { return std::isfinite(x); };

    if (c.num_identities < 1) {
        v.emplace_back("num_identities ≥ 1");
    }
    if (c.samples_per_identity < 1) {
        v.emplace_back("samples_per_identity ≥ 1");
    }
    if (c.canvas_size < 16) {
        v.emplace_back("canvas_size ≥ 16");
    }
    if (g.principals_enabled && g.principal_min < 1) {
        v.emplace_back("principals.min ≥ 1");
    }
    if (g.principal_min > g.principal_max) {
        v.emplace_back("m bounds ordered (principals.min ≤ principals.max)");
    }
    if (g.wrinkle_min < 0) {
        v.emplace_back("wrinkles.min ≥ 0");
    }
    if (g.wrinkle_min > g.wrinkle_max) {
        v.emplace_back("n bounds ordered (wrinkles.min ≤ wrinkles.max)");
    }
    if (!(g.edge_margin >= 0.0 && g.edge_margin < 0.5)) {
        v.emplace_back("principals.edge_margin in [0, 0.5)");
    }
    if (!(g.t0_range.lo >= 0.0 && g.t0_range.lo <= g.t0_range.hi)) {
        v.emplace_back("truncation t0 range non-empty within [0, 1] (truncation.t0_min ≤ truncation.t0_max)");
    }
    if (!(g.t1_range.lo <= g.t1_range.hi && g.t1_range.hi <= 1.0)) {
        v.emplace_back("truncation t1 range non-empty within [0, 1] (truncation.t1_min ≤ truncation.t1_max ≤ 1)");
    }
    if (!(g.t0_range.hi < g.t1_range.lo)) {
        v.emplace_back("truncation windows ordered (truncation.t0_max < truncation.t1_min)");
    }
    if (!finite(a.noise.mean)) {
        v.emplace_back("noise.mean finite");
    }
    if (!(a.noise.std_principal >= 0.0 && finite(a.noise.std_principal))) {
        v.emplace_back("noise.std_principal ≥ 0");
    }
    if (!(a.noise.std_wrinkle >= 0.0 && finite(a.noise.std_wrinkle))) {
        v.emplace_back("noise.std_wrinkle ≥ 0");
    }
    if (!(a.principal_width.lo > 0.0 && a.principal_width.lo <= a.principal_width.hi)) {
        v.emplace_back("principal width range non-empty and positive (0 < width.principal_min ≤ width.principal_max)");
    }
    if (!(a.wrinkle_width.lo > 0.0 && a.wrinkle_width.lo <= a.wrinkle_width.hi)) {
        v.emplace_back("wrinkle width range non-empty and positive (0 < width.wrinkle_min ≤ width.wrinkle_max)");
    }
    if (!(a.color_channel.lo >= 0.0 && a.color_channel.hi <= 255.0 &&
          std::ceil(a.color_channel.lo) <= std::floor(a.color_channel.hi))) {
        v.emplace_back("color range non-empty within [0, 255] (color.channel_min ≤ color.channel_max)");
    }
    if (!(a.blur_probability >= 0.0 && a.blur_probability <= 1.0)) {
        v.emplace_back("blur.probability in [0, 1]");
    }
    if (!(a.blur_sigma_max >= 0.0 && finite(a.blur_sigma_max))) {
        v.emplace_back("blur.sigma_max ≥ 0");
    }
    if (c.background_mode == BackgroundMode::Directory && c.background_dir.empty()) {
        v.emplace_back("background.dir required when background.mode = directory");
    }
    if (c.background_mode == BackgroundMode::Procedural && c.procedural_pool_size < 1) {
        v.emplace_back("background.pool_size ≥ 1 when background.mode = procedural");
    }
    if (c.procedural_pool_size > 0xFFFFFFFFULL) {
        v.emplace_back("background.pool_size < 2^32");
    }
    if (!(c.flatten_tolerance > 0.0)) {
        v.emplace_back("render.flatten_tolerance > 0");
    }
    if (c.png_compression < 0 || c.png_compression > 9) {
        v.emplace_back("png.compression in [0, 9]");
    }
    return v;
}

} // namespace creasegen::pipeline
