#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace CLI {
class App;
class Option;
}  // namespace CLI

namespace cavitycool::cli {

// Named settings shared by the command line and the config file. Explicit
// flags win over the file, the file over the built-in defaults.
class ParamSet {
public:
    using Target = std::variant<double*, std::size_t*, int*, unsigned*, bool*, std::string*,
                                std::vector<double>*, std::vector<int>*>;
    static_assert(std::is_same_v<std::size_t, std::uint64_t>, "seed is bound through size_t");

    explicit ParamSet(std::string section) : section_(std::move(section)) {}

    template <class T>
    void add(const std::string& name, T& target, const std::string& help) {
        entries_.push_back({name, &target, help, nullptr});
    }

    void bind(CLI::App& app);
    void apply(const ConfigFile& cfg);
    [[nodiscard]] nlohmann::ordered_json echo() const;
    [[nodiscard]] const std::string& section() const { return section_; }

private:
    struct Entry {
        std::string name;
        Target target;
        std::string help;
        CLI::Option* option;
    };
    std::string section_;
    std::vector<Entry> entries_;
};

struct OutputFile {
    std::string name;
    std::string sha1;
};

struct Context {
    std::string out_dir;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double tolerance = 0.0;
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;
    std::vector<OutputFile> outputs;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();

    /// Writes `content` to out_dir/name and records its hash.
    void write(const std::string& name, const std::string& content);
    /// Records a file the run read.
    void input(const std::string& path);
};

/// Small CSV builder; numbers go through format_double.
class Csv {
public:
    explicit Csv(const std::vector<std::string>& header);
    Csv& row();
    Csv& operator<<(double v);
    Csv& operator<<(std::size_t v);
    Csv& operator<<(int v);
    Csv& operator<<(const std::string& v);
    [[nodiscard]] std::string str() const { return text_ + (line_.empty() ? "" : line_ + "\n"); }

private:
    void cell(const std::string& s);
    std::string text_, line_;
    bool fresh_ = true;
};

struct Command {
    std::string name;
    std::string description;
    std::shared_ptr<ParamSet> params;
    std::function<int(Context&)> execute;
};

/// Each factory allocates its own settings with its defaults.
std::vector<Command> make_commands();

}  // namespace cavitycool::cli
