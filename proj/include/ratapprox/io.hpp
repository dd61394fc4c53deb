#pragma once

// Text formats: domain/degree specs, model JSON, convergence CSV, atomic file output.

#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ratapprox/aaa.hpp"
#include "ratapprox/analysis.hpp"
#include "ratapprox/errors.hpp"
#include "ratapprox/geometry.hpp"
#include "ratapprox/polyfit.hpp"

namespace ratapprox {

using json = nlohmann::json;

/// File-system failure while emitting artifacts.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline std::vector<double> parse_numbers(std::string_view text, std::string_view what) {
    std::vector<double> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError(std::string(what) + ": not a number: '" + item + "'");
        }
    }
    return out;
}

inline void write_json_value(std::ostream& os, const json& j) {
    switch (j.type()) {
        case json::value_t::object: {
            os << '{';
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) os << ',';
                first = false;
                os << json(k).dump() << ':';
                write_json_value(os, v);
            }
            os << '}';
            break;
        }
        case json::value_t::array: {
            os << '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ',';
                write_json_value(os, j[i]);
            }
            os << ']';
            break;
        }
        case json::value_t::number_float: {
            const double x = j.get<double>();
            // JSON has no inf/nan; they travel as strings
            if (std::isfinite(x)) os << format_double(x);
            else os << '"' << format_double(x) << '"';
            break;
        }
        default: os << j.dump();
    }
}

}  // namespace detail

/// Parses "disk:cx,cy,r", "interval:a,b" or "horseshoe:inner,outer,alpha".
inline Domain parse_domain(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw DomainError("domain: expected kind:params (disk:cx,cy,r | interval:a,b | horseshoe:inner,outer,alpha)");
    const auto kind = text.substr(0, colon);
    const auto v = detail::parse_numbers(text.substr(colon + 1), "domain");
    if (kind == "disk" && v.size() == 3) return make_disk({v[0], v[1]}, v[2]);
    if (kind == "interval" && v.size() == 2) return make_interval(v[0], v[1]);
    if (kind == "horseshoe" && v.size() == 3) return make_horseshoe(v[0], v[1], v[2]);
    throw DomainError("domain: unknown kind or wrong parameter count in '" + std::string(text) +
                      "'; valid: disk:cx,cy,r | interval:a,b | horseshoe:inner,outer,alpha");
}

/// Parses "start:step:stop", "start:stop" or a comma list.
inline std::vector<std::size_t> parse_degrees(std::string_view text) {
    auto count = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(s, &used);
            if (used != s.size() || v < 0) throw std::invalid_argument(s);
            return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            throw DomainError("degrees: not a nonnegative integer: '" + s + "'");
        }
    };
    std::vector<std::string> parts;
    const char sep = text.find(':') != std::string_view::npos ? ':' : ',';
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, sep)) parts.push_back(item);

    std::vector<std::size_t> out;
    if (sep == ':') {
        if (parts.size() < 2 || parts.size() > 3) throw DomainError("degrees: expected start:step:stop");
        const std::size_t a = count(parts[0]);
        const std::size_t step = parts.size() == 3 ? count(parts[1]) : 1;
        const std::size_t b = count(parts.back());
        if (step == 0 || b < a) throw DomainError("degrees: empty or non-advancing range");
        for (std::size_t n = a; n <= b; n += step) out.push_back(n);
    } else {
        for (const auto& p : parts) out.push_back(count(p));
    }
    if (out.empty()) throw DomainError("degrees: empty list");
    return out;
}

inline FunctionSpec parse_function(std::string_view name) {
    if (auto f = function_from_name(name)) return *f;
    std::string valid;
    for (auto f : kAllFunctions) valid += (valid.empty() ? "" : ", ") + std::string(function_name(f));
    throw DomainError("unknown function '" + std::string(name) + "'; valid: " + valid);
}

/// Compact JSON with every float at 17 significant digits; object keys in sorted order.
inline std::string dump_json(const json& j) {
    std::ostringstream os;
    detail::write_json_value(os, j);
    os << '\n';
    return os.str();
}

inline json complex_array(std::span<const cplx> v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(json::array({z.real(), z.imag()}));
    return a;
}

inline CVector complex_vector(const json& a) {
    CVector out;
    for (const auto& p : a) {
        if (!p.is_array() || p.size() != 2) throw DomainError("model: complex entries are [re, im] pairs");
        out.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return out;
}

inline json to_json(const BarycentricRational& r) {
    return {{"type", "barycentric"},
            {"supports", complex_array(r.supports)},
            {"values", complex_array(r.values)},
            {"weights", complex_array(r.weights)}};
}

inline json to_json(const ArnoldiPolynomial& p) {
    return {{"type", "arnoldi"},
            {"degree", p.degree},
            {"hessenberg", complex_array(p.hessenberg)},
            {"coeffs", complex_array(p.coeffs)}};
}

using Model = std::variant<BarycentricRational, ArnoldiPolynomial>;

inline Model model_from_json(const json& j) {
    try {
        const auto type = j.at("type").get<std::string>();
        if (type == "barycentric")
            return make_barycentric(complex_vector(j.at("supports")), complex_vector(j.at("values")),
                                    complex_vector(j.at("weights")));
        if (type == "arnoldi") {
            ArnoldiPolynomial p;
            p.degree = j.at("degree").get<std::size_t>();
            p.hessenberg = complex_vector(j.at("hessenberg"));
            p.coeffs = complex_vector(j.at("coeffs"));
            if (p.hessenberg.size() != (p.degree + 1) * p.degree || p.coeffs.size() != p.degree + 1)
                throw DomainError("model: arnoldi array sizes do not match degree");
            return p;
        }
        throw DomainError("model: unknown type '" + type + "'");
    } catch (const json::exception& e) {
        throw DomainError(std::string("model: malformed JSON: ") + e.what());
    }
}

inline std::string convergence_csv(const ConvergenceRecord& rec) {
    std::string out = "degree,method,error,flag\n";
    for (auto m : {Method::Rational, Method::Polynomial})
        for (const auto& e : rec.of(m))
            out += std::to_string(e.degree) + ',' + std::string(method_name(m)) + ',' +
                   format_double(e.error) + ',' + std::string(flag_name(e.flag)) + '\n';
    return out;
}

/// Write-then-rename so readers never see a partial file.
inline void write_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!os) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace ratapprox
