#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "cavitycool/errors.hpp"
#include "cli.hpp"

namespace cavitycool::cli {

ConfigFile parse_config(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.message() + " at line " + std::to_string(e.line()));
    }
    ConfigFile cfg;
    for (const auto& [key, node] : tree) {
        if (node.empty()) {
            cfg["global"][key] = node.data();
        } else {
            for (const auto& [k, v] : node) cfg[key][k] = v.data();
        }
    }
    return cfg;
}

ConfigFile parse_manifest(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("manifest: ") + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object()) throw ConfigError("manifest has no config object");
    ConfigFile cfg;
    for (const auto& [section, keys] : j["config"].items()) {
        if (!keys.is_object()) throw ConfigError("manifest config section '" + section + "' is not an object");
        for (const auto& [k, v] : keys.items()) {
            if (!v.is_string()) throw ConfigError("manifest value " + section + "." + k + " is not a string");
            cfg[section][k] = v.get<std::string>();
        }
    }
    return cfg;
}

ConfigFile load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_manifest(text);
    std::istringstream in(text);
    return parse_config(in);
}

std::string git_blob_sha1(std::string_view content) {
    const std::string header = "blob " + std::to_string(content.size()) + '\0';
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    const bool ok = ctx && EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                    EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                    EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                    EVP_DigestFinal_ex(ctx, md.data(), &len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok) throw std::runtime_error("SHA-1 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), r.ptr);
}

}  // namespace cavitycool::cli
