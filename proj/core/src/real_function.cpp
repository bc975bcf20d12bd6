#include "pencil/real_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace pencil {

namespace {

constexpr double kDomainSlack = 1e-9;

double falling_factorial(int d, int m) {
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= static_cast<double>(d - i);
    return r;
}

std::string format_coeff(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RealFunction RealFunction::constant(double c) { return RealFunction{}.add_cos(0, c); }
RealFunction RealFunction::cosine(int k, double a) { return RealFunction{}.add_cos(k, a); }
RealFunction RealFunction::sine(int k, double b) { return RealFunction{}.add_sin(k, b); }
RealFunction RealFunction::monomial(int d, double c) { return RealFunction{}.add_poly(d, c); }

RealFunction& RealFunction::add_cos(int k, double a) {
    if (k < 0) throw std::domain_error("RealFunction: cos frequency must be >= 0");
    cos_.emplace_back(k, a);
    normalize();
    return *this;
}

RealFunction& RealFunction::add_sin(int k, double b) {
    if (k < 1) throw std::domain_error("RealFunction: sin frequency must be >= 1");
    sin_.emplace_back(k, b);
    normalize();
    return *this;
}

RealFunction& RealFunction::add_poly(int d, double c) {
    if (d < 0) throw std::domain_error("RealFunction: polynomial degree must be >= 0");
    poly_.emplace_back(d, c);
    normalize();
    return *this;
}

void RealFunction::normalize() {
    auto squash = [](std::vector<Term>& terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        std::vector<Term> out;
        for (const Term& t : terms) {
            if (!out.empty() && out.back().first == t.first)
                out.back().second += t.second;
            else
                out.push_back(t);
        }
        std::erase_if(out, [](const Term& t) { return t.second == 0.0; });
        terms = std::move(out);
    };
    squash(cos_);
    squash(sin_);
    squash(poly_);
}

double RealFunction::eval(double x, int m) const {
    if (m < 0) throw std::domain_error("RealFunction::eval: negative derivative order");
    if (x < -kDomainSlack || x > std::numbers::pi + kDomainSlack)
        throw std::domain_error("RealFunction::eval: x outside [0, pi]");
    x = std::clamp(x, 0.0, std::numbers::pi);

    const double half_pi = std::numbers::pi / 2.0;
    double v = 0.0;
    // d^m/dx^m cos(kx) = k^m cos(kx + m pi/2); same shift for sin.
    for (const Term& t : cos_) {
        const int k = t.first;
        if (k == 0) {
            if (m == 0) v += t.second;
            continue;
        }
        v += t.second * std::pow(k, m) * std::cos(k * x + m * half_pi);
    }
    for (const Term& t : sin_)
        v += t.second * std::pow(t.first, m) * std::sin(t.first * x + m * half_pi);
    for (const Term& t : poly_) {
        const int d = t.first;
        if (m > d) continue;
        v += t.second * falling_factorial(d, m) * std::pow(x, d - m);
    }
    return v;
}

RealFunction RealFunction::derivative(int m) const {
    if (m < 0) throw std::domain_error("RealFunction::derivative: negative order");
    if (m == 0) return *this;
    RealFunction g;
    // cos(kx) -> k^m cos(kx + m pi/2): cycle cos -> -sin -> -cos -> sin.
    for (const Term& t : cos_) {
        const int k = t.first;
        if (k == 0) continue;
        const double c = t.second * std::pow(k, m);
        switch (m % 4) {
            case 0: g.add_cos(k, c); break;
            case 1: g.add_sin(k, -c); break;
            case 2: g.add_cos(k, -c); break;
            case 3: g.add_sin(k, c); break;
        }
    }
    for (const Term& t : sin_) {
        const int k = t.first;
        const double c = t.second * std::pow(k, m);
        switch (m % 4) {
            case 0: g.add_sin(k, c); break;
            case 1: g.add_cos(k, c); break;
            case 2: g.add_sin(k, -c); break;
            case 3: g.add_cos(k, -c); break;
        }
    }
    for (const Term& t : poly_) {
        if (m > t.first) continue;
        g.add_poly(t.first - m, t.second * falling_factorial(t.first, m));
    }
    return g;
}

bool RealFunction::is_zero() const {
    return cos_.empty() && sin_.empty() && poly_.empty();
}

RealFunction operator+(const RealFunction& f, const RealFunction& g) {
    RealFunction r = f;
    for (const auto& t : g.cos_) r.add_cos(t.first, t.second);
    for (const auto& t : g.sin_) r.add_sin(t.first, t.second);
    for (const auto& t : g.poly_) r.add_poly(t.first, t.second);
    return r;
}

RealFunction operator-(const RealFunction& f, const RealFunction& g) {
    return f + (-1.0 * g);
}

RealFunction operator*(double s, const RealFunction& f) {
    RealFunction r;
    for (const auto& t : f.cos_) r.add_cos(t.first, s * t.second);
    for (const auto& t : f.sin_) r.add_sin(t.first, s * t.second);
    for (const auto& t : f.poly_) r.add_poly(t.first, s * t.second);
    return r;
}

std::string RealFunction::to_text(std::string_view name) const {
    std::string out;
    auto emit = [&](const char* kind, const std::vector<Term>& terms) {
        if (terms.empty()) return;
        out += std::string(name) + "." + kind + " = [";
        for (size_t i = 0; i < terms.size(); ++i) {
            if (i) out += ", ";
            out += "[" + std::to_string(terms[i].first) + ", " + format_coeff(terms[i].second) + "]";
        }
        out += "]\n";
    };
    emit("cos", cos_);
    emit("sin", sin_);
    emit("poly", poly_);
    return out;
}

void RealFunction::add_terms_from_list(std::string_view kind, std::string_view body) {
    // body looks like: [[3, 1.0], [1, 0.2]]
    size_t i = 0;
    auto skip_ws = [&] { while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i; };
    auto expect = [&](char c) {
        skip_ws();
        if (i >= body.size() || body[i] != c)
            throw std::runtime_error(std::string("RealFunction: malformed term list, expected '") + c + "'");
        ++i;
    };
    skip_ws();
    expect('[');
    skip_ws();
    if (i < body.size() && body[i] == ']') return;  // empty list
    while (true) {
        expect('[');
        skip_ws();
        size_t used = 0;
        int k = std::stoi(std::string(body.substr(i)), &used);
        i += used;
        expect(',');
        skip_ws();
        double c = std::stod(std::string(body.substr(i)), &used);
        i += used;
        expect(']');
        if (kind == "cos") add_cos(k, c);
        else if (kind == "sin") add_sin(k, c);
        else if (kind == "poly") add_poly(k, c);
        else throw std::runtime_error("RealFunction: unknown term kind '" + std::string(kind) + "'");
        skip_ws();
        if (i < body.size() && body[i] == ',') { ++i; continue; }
        expect(']');
        break;
    }
}

}  // namespace pencil
