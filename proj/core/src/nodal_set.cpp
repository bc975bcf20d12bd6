#include "pencil/nodal_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pencil {

void NodalSet::add_level(int n, std::vector<double> nodes) {
    if (n < 1) throw std::domain_error("NodalSet: level index must be >= 1");
    constexpr double pi = std::numbers::pi;
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (!(nodes[i] > 0.0) || !(nodes[i] < pi))
            throw std::domain_error("NodalSet: node outside (0, pi) at level " + std::to_string(n));
        if (i > 0 && !(nodes[i] > nodes[i - 1]))
            throw std::domain_error("NodalSet: nodes not strictly increasing at level " + std::to_string(n));
    }
    // K(n) nondecreasing across levels
    for (const auto& [m, xs] : levels_) {
        if (m < n && xs.size() > nodes.size())
            throw std::domain_error("NodalSet: node count would decrease from level " +
                                    std::to_string(m) + " to " + std::to_string(n));
        if (m > n && xs.size() < nodes.size())
            throw std::domain_error("NodalSet: node count would decrease from level " +
                                    std::to_string(n) + " to " + std::to_string(m));
    }
    levels_[n] = std::move(nodes);
}

const std::vector<double>& NodalSet::nodes(int n) const {
    auto it = levels_.find(n);
    if (it == levels_.end())
        throw std::out_of_range("NodalSet: no level " + std::to_string(n));
    return it->second;
}

std::vector<int> NodalSet::levels() const {
    std::vector<int> out;
    out.reserve(levels_.size());
    for (const auto& [n, _] : levels_) out.push_back(n);
    return out;
}

NodalSet NodalSet::trivial_case1(int n_max) {
    NodalSet s;
    s.source = NodalSource::synthetic;
    s.case_tag = CaseTag::CaseI;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<double> xs(n);
        for (int k = 1; k <= n; ++k) xs[k - 1] = (k - 0.5) * std::numbers::pi / n;
        s.levels_[n] = std::move(xs);
    }
    return s;
}

NodalSet NodalSet::trivial_case2(int n_max) {
    NodalSet s;
    s.source = NodalSource::synthetic;
    s.case_tag = CaseTag::CaseII;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<double> xs;
        xs.reserve(n - 1);
        for (int k = 1; k <= n - 1; ++k) xs.push_back(k * std::numbers::pi / n);
        s.levels_[n] = std::move(xs);
    }
    return s;
}

std::string NodalSet::to_cache_text(const std::string& digest) const {
    std::string out = "# nodes " + digest + "\n";
    char buf[64];
    for (const auto& [n, xs] : levels_) {
        for (size_t j = 0; j < xs.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%d %zu %.17g\n", n, j + 1, xs[j]);
            out += buf;
        }
    }
    return out;
}

NodalSet NodalSet::from_cache_text(const std::string& text, std::string* digest_out) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# nodes ", 0) != 0)
        throw std::runtime_error("NodalSet: bad cache header");
    if (digest_out) *digest_out = line.substr(8);
    NodalSet s;
    s.source = NodalSource::file;
    std::map<int, std::vector<double>> levels;
    int n, j;
    double x;
    while (in >> n >> j >> x) {
        auto& v = levels[n];
        if (static_cast<int>(v.size()) + 1 != j)
            throw std::runtime_error("NodalSet: non-contiguous node index in cache");
        v.push_back(x);
    }
    for (auto& [lvl, xs] : levels) s.add_level(lvl, std::move(xs));
    return s;
}

std::vector<double> grid_lengths(const NodalSet& set, int n) {
    const auto& xs = set.nodes(n);
    std::vector<double> ls;
    if (xs.size() >= 2) {
        ls.reserve(xs.size() - 1);
        for (size_t i = 0; i + 1 < xs.size(); ++i) ls.push_back(xs[i + 1] - xs[i]);
    }
    return ls;
}

int locate_index(const NodalSet& set, int n, double x) {
    const auto& xs = set.nodes(n);
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    return static_cast<int>(it - xs.begin());
}

std::vector<double> difference_quotient(std::span<const double> a, int m) {
    if (m < 0) throw std::domain_error("difference_quotient: m must be >= 0");
    std::vector<double> cur(a.begin(), a.end());
    if (m == 0) return cur;
    if (static_cast<int>(a.size()) < m + 1)
        throw std::domain_error("difference_quotient: need at least m+1 entries");
    for (int pass = 1; pass <= m; ++pass) {
        std::vector<double> next(cur.size() - 1);
        for (size_t j = 0; j + 1 < cur.size(); ++j) {
            const double base = a[j];
            if (base == 0.0)
                throw std::domain_error("difference_quotient: zero base entry at index " + std::to_string(j + 1));
            next[j] = (cur[j + 1] - cur[j]) / base;
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace pencil
