#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <boost/version.hpp>
#include <openssl/crypto.h>

#include "cavitycool/errors.hpp"
#include "command.hpp"

#ifndef CAVITYCOOL_VERSION
#define CAVITYCOOL_VERSION "unknown"
#endif

namespace cavitycool::cli {

namespace {

template <class T>
T parse_number(const std::string& key, const std::string& s) {
    T v{};
    const auto* end = s.data() + s.size();
    const auto r = std::from_chars(s.data(), end, v);
    if (r.ec != std::errc() || r.ptr != end) throw ConfigError("config: bad value '" + s + "' for " + key);
    return v;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& s) {
    std::vector<T> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_number<T>(key, trim(item)));
    return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        if constexpr (std::is_floating_point_v<T>) s += format_double(v[i]);
        else s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace

void ParamSet::bind(CLI::App& app) {
    for (auto& e : entries_) {
        const std::string flag = "--" + e.name;
        std::visit(
            [&](auto* p) {
                using T = std::remove_pointer_t<decltype(p)>;
                if constexpr (std::is_same_v<T, bool>) {
                    e.option = app.add_option(flag, *p, e.help)->capture_default_str();
                } else if constexpr (std::is_same_v<T, std::vector<double>> || std::is_same_v<T, std::vector<int>>) {
                    e.option = app.add_option(flag, *p, e.help)->delimiter(',')->capture_default_str();
                } else {
                    e.option = app.add_option(flag, *p, e.help)->capture_default_str();
                }
            },
            e.target);
    }
}

void ParamSet::apply(const ConfigFile& cfg) {
    const auto it = cfg.find(section_);
    if (it == cfg.end()) return;
    for (const auto& [key, raw] : it->second) {
        auto e = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& x) { return x.name == key; });
        if (e == entries_.end()) throw ConfigError("config: unknown key '" + key + "' in [" + section_ + "]");
        if (e->option && e->option->count() > 0) continue;  // command line wins
        const std::string value = trim(raw);
        const std::string where = section_ + "." + key;
        std::visit(
            [&](auto* p) {
                using T = std::remove_pointer_t<decltype(p)>;
                if constexpr (std::is_same_v<T, bool>) {
                    if (value == "true" || value == "1" || value == "yes") *p = true;
                    else if (value == "false" || value == "0" || value == "no") *p = false;
                    else throw ConfigError("config: bad boolean '" + value + "' for " + where);
                } else if constexpr (std::is_same_v<T, std::string>) {
                    *p = value;
                } else if constexpr (std::is_same_v<T, std::vector<double>>) {
                    *p = parse_list<double>(where, value);
                } else if constexpr (std::is_same_v<T, std::vector<int>>) {
                    *p = parse_list<int>(where, value);
                } else {
                    *p = parse_number<T>(where, value);
                }
            },
            e->target);
    }
}

nlohmann::ordered_json ParamSet::echo() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& e : entries_) {
        std::visit(
            [&](auto* p) {
                using T = std::remove_pointer_t<decltype(p)>;
                if constexpr (std::is_same_v<T, bool>) j[e.name] = *p ? "true" : "false";
                else if constexpr (std::is_same_v<T, std::string>) j[e.name] = *p;
                else if constexpr (std::is_same_v<T, double>) j[e.name] = format_double(*p);
                else if constexpr (std::is_same_v<T, std::vector<double>> || std::is_same_v<T, std::vector<int>>)
                    j[e.name] = join(*p);
                else j[e.name] = std::to_string(*p);
            },
            e.target);
    }
    return j;
}

void Context::write(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::path(out_dir) / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << content;
    if (!f) throw ConfigError("write failed for " + path.string());
    outputs.push_back({name, git_blob_sha1(content)});
}

void Context::input(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream buf;
    if (f) buf << f.rdbuf();
    inputs.push_back({{"path", path}, {"sha1", f ? git_blob_sha1(buf.str()) : std::string("unreadable")}});
}

Csv::Csv(const std::vector<std::string>& header) {
    for (const auto& h : header) cell(h);
}

void Csv::cell(const std::string& s) {
    if (!fresh_) line_ += ',';
    line_ += s;
    fresh_ = false;
}

Csv& Csv::row() {
    text_ += line_ + "\n";
    line_.clear();
    fresh_ = true;
    return *this;
}

Csv& Csv::operator<<(double v) {
    cell(format_double(v));
    return *this;
}
Csv& Csv::operator<<(std::size_t v) {
    cell(std::to_string(v));
    return *this;
}
Csv& Csv::operator<<(int v) {
    cell(std::to_string(v));
    return *this;
}
Csv& Csv::operator<<(const std::string& v) {
    cell(v);
    return *this;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cavity cooling of polarizable particles: coefficient scans, multimode friction and Langevin runs."};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_dir = "out", config_path;
    std::uint64_t seed = 20240917;
    unsigned threads = 1;
    double tolerance = 1e-11;
    ParamSet global("global");
    global.add("out", out_dir, "output directory");
    global.add("seed", seed, "random seed");
    global.add("threads", threads, "worker threads (results do not depend on it)");
    global.add("tolerance", tolerance, "absolute tolerance of memory-integral quadrature");
    global.bind(app);
    app.add_option("--config", config_path, "key = value config file, or a manifest from an earlier run");

    auto commands = make_commands();
    std::vector<CLI::App*> subs;
    for (auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.description);
        c.params->bind(*sub);
        subs.push_back(sub);
    }

    std::vector<const char*> argv = {"cavitycool"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_bad_input;
    }

    std::size_t which = 0;
    while (which < subs.size() && !subs[which]->parsed()) ++which;
    if (which == subs.size()) return exit_bad_input;
    Command& cmd = commands[which];

    Context ctx;
    ctx.out = &out;
    ctx.err = &err;
    const auto t0 = std::chrono::steady_clock::now();
    int code = exit_ok;
    try {
        if (!config_path.empty()) {
            const auto cfg = load_config(config_path);
            for (const auto& [section, keys] : cfg) {
                if (section != "global" && section != cmd.name) {
                    bool known = false;
                    for (const auto& c : commands) known = known || c.name == section;
                    if (!known) throw ConfigError("config: unknown section [" + section + "]");
                }
            }
            global.apply(cfg);
            cmd.params->apply(cfg);
            ctx.input(config_path);
        }
        ctx.out_dir = out_dir;
        ctx.seed = seed;
        ctx.threads = std::max(1u, threads);
        ctx.tolerance = tolerance;
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec || !std::filesystem::is_directory(out_dir)) throw ConfigError("cannot create output directory " + out_dir);
        code = cmd.execute(ctx);
    } catch (const TimeStepError& e) {
        err << "error: " << e.what() << " (suggested dt = " << format_double(e.suggested_dt) << ")\n";
        return exit_bad_input;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_bad_input;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    nlohmann::ordered_json m;
    m["command"] = cmd.name;
    m["config"] = {{"global", global.echo()}, {cmd.name, cmd.params->echo()}};
    m["seed"] = seed;
    m["inputs"] = ctx.inputs;
    nlohmann::ordered_json outs = nlohmann::ordered_json::array();
    for (const auto& o : ctx.outputs) outs.push_back({{"path", o.name}, {"sha1", o.sha1}});
    m["outputs"] = outs;
    m["summary"] = ctx.summary;
    m["exit_code"] = code;
    m["versions"] = {{"cavitycool", CAVITYCOOL_VERSION},
                     {"compiler", __VERSION__},
                     {"boost", BOOST_LIB_VERSION},
                     {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                     {"cli11", CLI11_VERSION},
                     {"openssl", OpenSSL_version(OPENSSL_VERSION)}};
    m["wall_time_s"] = wall;
    try {
        std::ofstream f(std::filesystem::path(out_dir) / (cmd.name + ".manifest.json"), std::ios::trunc);
        f << m.dump(2) << "\n";
    } catch (const std::exception& e) {
        err << "error: cannot write manifest: " << e.what() << "\n";
        return exit_bad_input;
    }
    return code;
}

}  // namespace cavitycool::cli
