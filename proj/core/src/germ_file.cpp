#include <fstream>
#include <map>
#include <sstream>

#include "openbook/errors.hpp"
#include "openbook/germ.hpp"

namespace openbook {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_words(std::string_view s) {
    std::istringstream is{std::string(s)};
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

[[noreturn]] void fail_at(std::size_t line_no, const std::string& message) {
    throw InputError("germ file line " + std::to_string(line_no) + ": " + message);
}

}  // namespace

MapGerm parse_germ_text(std::string_view text) {
    std::string name;
    std::vector<std::string> vars;
    std::vector<std::string> cvars;
    std::map<std::size_t, std::pair<std::string, std::size_t>> components;  // index -> (expr, line)
    std::optional<std::pair<std::string, std::size_t>> holomorphic;

    std::istringstream in{std::string(text)};
    std::size_t line_no = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const auto colon = line.find(':');
        const auto equals = line.find('=');
        if (colon != std::string::npos && (equals == std::string::npos || colon < equals)) {
            const std::string key = trim(line.substr(0, colon));
            const std::string value = trim(line.substr(colon + 1));
            if (key == "name")
                name = value;
            else if (key == "vars")
                vars = split_words(value);
            else if (key == "cvars")
                cvars = split_words(value);
            else
                fail_at(line_no, "unknown key '" + key + "'");
            continue;
        }
        if (equals == std::string::npos) fail_at(line_no, "expected 'key: value' or 'Pk = <expression>'");

        const std::string lhs = trim(line.substr(0, equals));
        const std::string rhs = trim(line.substr(equals + 1));
        if (rhs.empty()) fail_at(line_no, "empty expression");
        if (lhs == "f") {
            holomorphic = {rhs, line_no};
            continue;
        }
        if (lhs.size() < 2 || lhs[0] != 'P' || lhs.find_first_not_of("0123456789", 1) != std::string::npos)
            fail_at(line_no, "component name must look like P1, P2, ...");
        const std::size_t index = std::stoul(lhs.substr(1));
        if (index == 0) fail_at(line_no, "components are numbered from P1");
        if (!components.emplace(index, std::make_pair(rhs, line_no)).second)
            fail_at(line_no, "duplicate component " + lhs);
    }

    if (holomorphic) {
        if (!components.empty()) throw InputError("germ file mixes 'f =' with real components");
        if (cvars.empty()) throw InputError("holomorphic germ needs a 'cvars:' line");
        try {
            auto f = parse_gaussian_polynomial(holomorphic->first, cvars);
            std::optional<std::vector<std::string>> names;
            if (!vars.empty()) names = vars;
            return holomorphic_to_real(f, names, name);
        } catch (const ParseError& e) {
            fail_at(holomorphic->second, e.what());
        }
    }

    if (vars.empty()) throw InputError("germ file has no 'vars:' line");
    if (components.empty()) throw InputError("germ file defines no components");
    std::vector<Polynomial> polys;
    std::size_t expected = 1;
    for (const auto& [index, entry] : components) {
        if (index != expected) throw InputError("component P" + std::to_string(expected) + " is missing");
        ++expected;
        try {
            polys.push_back(parse_polynomial(entry.first, vars));
        } catch (const ParseError& e) {
            fail_at(entry.second, e.what());
        }
    }
    return MapGerm(std::move(polys), std::move(vars), std::move(name));
}

MapGerm load_germ_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open germ file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_germ_text(buffer.str());
}

std::string format_germ_text(const MapGerm& g) {
    std::ostringstream os;
    if (!g.name().empty()) os << "name: " << g.name() << '\n';
    os << "vars:";
    for (const auto& v : g.var_names()) os << ' ' << v;
    os << '\n';
    const auto comps = g.component_strings();
    for (std::size_t i = 0; i < comps.size(); ++i) os << 'P' << (i + 1) << " = " << comps[i] << '\n';
    return os.str();
}

}  // namespace openbook
