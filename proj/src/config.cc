#include "geodtn/config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "geodtn/errors.h"

namespace geodtn {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& what) {
    throw ParseError("key '" + key + "': " + what);
}

double to_double(const std::string& key, const std::string& tok) {
    try {
        size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) bad_value(key, "trailing characters in '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        bad_value(key, "expected a number, got '" + tok + "'");
    }
}

int to_int(const std::string& key, const std::string& tok) {
    int v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
        bad_value(key, "expected an integer, got '" + tok + "'");
    }
    return v;
}

uint64_t to_u64(const std::string& key, const std::string& tok) {
    uint64_t v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
        bad_value(key, "expected an unsigned integer, got '" + tok + "'");
    }
    return v;
}

bool to_bool(const std::string& key, const std::string& tok) {
    if (tok == "true" || tok == "1") return true;
    if (tok == "false" || tok == "0") return false;
    bad_value(key, "expected true/false, got '" + tok + "'");
}

void need(const std::string& key, const std::vector<std::string>& toks, size_t lo, size_t hi) {
    if (toks.size() < lo || toks.size() > hi) {
        bad_value(key, "expected " + std::to_string(lo) +
                           (hi == lo ? "" : "-" + std::to_string(hi)) + " value(s), got " +
                           std::to_string(toks.size()));
    }
}

bool is_repeatable(const std::string& key) { return key == "group" || key == "destination"; }

}  // namespace

std::vector<ConfigEntry> parse_kv(std::istream& in) {
    std::vector<ConfigEntry> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        ConfigEntry e;
        e.key = trim(line.substr(0, eq));
        e.raw = trim(line.substr(eq + 1));
        e.tokens = tokenize(e.raw);
        e.line = lineno;
        if (e.key.empty()) {
            throw ParseError("line " + std::to_string(lineno) + ": missing key");
        }
        out.push_back(std::move(e));
    }
    return out;
}

void set_config_key(ScenarioConfig& c, const std::string& key,
                    const std::vector<std::string>& t) {
    if (key == "mobility") {
        need(key, t, 1, 1);
        if (t[0] == "rwp") {
            c.mobility = MobilityKind::Rwp;
        } else if (t[0] == "poi-map") {
            c.mobility = MobilityKind::PoiMap;
        } else {
            bad_value(key, "expected rwp or poi-map, got '" + t[0] + "'");
        }
    } else if (key == "area") {
        need(key, t, 2, 2);
        c.area = {to_double(key, t[0]), to_double(key, t[1])};
    } else if (key == "nodes") {
        need(key, t, 1, 1);
        c.node_count = to_int(key, t[0]);
    } else if (key == "map_file") {
        need(key, t, 1, 1);
        c.map_file = t[0];
    } else if (key == "map_grid") {
        need(key, t, 4, 4);
        GridSpec g;
        g.cols = to_int(key, t[0]);
        g.rows = to_int(key, t[1]);
        g.spacing = to_double(key, t[2]);
        g.poi_block = to_int(key, t[3]);
        c.map_grid = g;
    } else if (key == "group") {
        need(key, t, 3, 3);
        GroupSpec g;
        g.group_id = to_int(key, t[0]);
        g.count = to_int(key, t[1]);
        g.interest = to_double(key, t[2]);
        c.groups.push_back(g);
    } else if (key == "interest") {
        need(key, t, 1, 1);
        if (c.groups.empty()) bad_value(key, "requires group lines above");
        const double v = to_double(key, t[0]);
        for (auto& g : c.groups) g.interest = v;
    } else if (key == "destination") {
        need(key, t, 2, 2);
        c.destinations.push_back({to_double(key, t[0]), to_double(key, t[1])});
    } else if (key == "destinations") {
        need(key, t, 2, 2);
        DestinationSpec d;
        d.count = to_int(key, t[0]);
        d.variation = to_double(key, t[1]);
        c.destination_spec = d;
    } else if (key == "speed") {
        need(key, t, 1, 2);
        const double lo = to_double(key, t[0]);
        c.speed = {lo, t.size() == 2 ? to_double(key, t[1]) : lo};
    } else if (key == "wait") {
        need(key, t, 1, 1);
        c.wait = {0.0, to_double(key, t[0])};
    } else if (key == "range") {
        need(key, t, 1, 1);
        c.range = to_double(key, t[0]);
    } else if (key == "bandwidth") {
        need(key, t, 1, 1);
        c.bandwidth = to_double(key, t[0]);
    } else if (key == "slot") {
        need(key, t, 1, 1);
        c.slot = to_double(key, t[0]);
    } else if (key == "copies") {
        need(key, t, 1, 1);
        c.copies = to_int(key, t[0]);
    } else if (key == "ttl") {
        need(key, t, 1, 1);
        c.ttl = to_double(key, t[0]);
    } else if (key == "message_size") {
        need(key, t, 1, 1);
        c.message_size = to_u64(key, t[0]);
    } else if (key == "generation_interval") {
        need(key, t, 1, 1);
        c.generation_interval = to_double(key, t[0]);
    } else if (key == "generation_mode") {
        need(key, t, 1, 1);
        if (t[0] == "network-wide") {
            c.generation_mode = GenerationMode::NetworkWide;
        } else if (t[0] == "per-node") {
            c.generation_mode = GenerationMode::PerNode;
        } else {
            bad_value(key, "expected network-wide or per-node, got '" + t[0] + "'");
        }
    } else if (key == "warmup") {
        need(key, t, 1, 1);
        c.warmup = to_double(key, t[0]);
    } else if (key == "generation_end") {
        need(key, t, 1, 1);
        c.generation_end = to_double(key, t[0]);
    } else if (key == "drain") {
        need(key, t, 1, 1);
        c.drain = to_double(key, t[0]);
    } else if (key == "buffer_capacity") {
        need(key, t, 1, 1);
        c.buffer_capacity = to_u64(key, t[0]);
    } else if (key == "scheme") {
        need(key, t, 1, 1);
        c.scheme = parse_scheme(t[0]);
    } else if (key == "window") {
        need(key, t, 1, 1);
        c.window = to_double(key, t[0]);
    } else if (key == "seed") {
        need(key, t, 1, 1);
        c.seed = to_u64(key, t[0]);
    } else if (key == "check_invariants") {
        need(key, t, 1, 1);
        c.check_invariants = to_bool(key, t[0]);
    } else {
        throw ParseError("unknown key '" + key + "'");
    }
}

namespace {

const std::set<std::string> kSweepKeys = {"sweep_parameter", "sweep_values", "seeds", "schemes"};

ScenarioConfig build_from(const std::vector<ConfigEntry>& entries, bool skip_sweep_keys) {
    ScenarioConfig c;
    std::set<std::string> seen;
    for (const auto& e : entries) {
        if (skip_sweep_keys && kSweepKeys.count(e.key)) continue;
        if (!is_repeatable(e.key) && !seen.insert(e.key).second) {
            throw ParseError("line " + std::to_string(e.line) + ": duplicate key '" + e.key +
                             "'");
        }
        try {
            set_config_key(c, e.key, e.tokens);
        } catch (const ParseError& err) {
            throw ParseError("line " + std::to_string(e.line) + ": " + err.what());
        }
    }
    return c;
}

}  // namespace

ScenarioConfig build_config(const std::vector<ConfigEntry>& entries) {
    return build_from(entries, false);
}

ScenarioConfig load_config(std::istream& in) {
    ScenarioConfig c = build_config(parse_kv(in));
    c.validate();
    return c;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    try {
        return load_config(in);
    } catch (const ParseError& err) {
        throw ParseError(path + ": " + err.what());
    }
}

void SweepSpec::validate() const {
    if (parameter.empty()) throw ConfigError("sweep needs a sweep_parameter");
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    if (seeds.empty()) throw ConfigError("sweep needs at least one seed");
    if (schemes.empty()) throw ConfigError("sweep needs at least one scheme");
    for (const auto& v : values) apply_override(base, parameter, v);
}

SweepSpec load_sweep(std::istream& in) {
    const auto entries = parse_kv(in);
    SweepSpec spec;
    spec.base = build_from(entries, true);
    spec.base.validate();
    std::set<std::string> seen;
    for (const auto& e : entries) {
        if (!kSweepKeys.count(e.key)) continue;
        if (!seen.insert(e.key).second) {
            throw ParseError("line " + std::to_string(e.line) + ": duplicate key '" + e.key +
                             "'");
        }
        if (e.key == "sweep_parameter") {
            if (e.tokens.size() != 1) bad_value(e.key, "expected one key name");
            spec.parameter = e.tokens[0];
        } else if (e.key == "sweep_values") {
            std::string group;
            std::istringstream is(e.raw);
            while (std::getline(is, group, ',')) {
                auto toks = tokenize(group);
                if (toks.empty()) bad_value(e.key, "empty value point");
                spec.values.push_back(std::move(toks));
            }
        } else if (e.key == "seeds") {
            for (const auto& tok : e.tokens) spec.seeds.push_back(to_u64(e.key, tok));
        } else {  // schemes
            for (const auto& tok : e.tokens) spec.schemes.push_back(parse_scheme(tok));
        }
    }
    if (spec.seeds.empty()) spec.seeds.push_back(spec.base.seed);
    if (spec.schemes.empty()) spec.schemes.push_back(spec.base.scheme);
    spec.validate();
    return spec;
}

SweepSpec load_sweep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open sweep file '" + path + "'");
    try {
        return load_sweep(in);
    } catch (const ParseError& err) {
        throw ParseError(path + ": " + err.what());
    }
}

ScenarioConfig apply_override(const ScenarioConfig& base, const std::string& key,
                              const std::vector<std::string>& tokens) {
    if (is_repeatable(key)) throw ParseError("cannot sweep repeatable key '" + key + "'");
    if (key == "seed" || key == "scheme") {
        throw ParseError("'" + key + "' is swept through seeds/schemes, not sweep_parameter");
    }
    ScenarioConfig c = base;
    set_config_key(c, key, tokens);
    c.validate();
    return c;
}

}  // namespace geodtn
