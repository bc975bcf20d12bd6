#include "pencil/cache.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pencil/phase_solver.hpp"

namespace pencil {

namespace fs = std::filesystem;

namespace {

// Smallest stored sweep at least as deep as the request, or empty.
std::optional<fs::path> find_entry(const std::string& dir, const std::string& prefix,
                                   int n_max) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) return std::nullopt;
    std::optional<fs::path> best;
    int best_depth = 0;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind(prefix, 0) != 0 || name.size() <= prefix.size() + 4) continue;
        if (name.substr(name.size() - 4) != ".txt") continue;
        const std::string mid = name.substr(prefix.size(), name.size() - prefix.size() - 4);
        int depth = 0;
        try {
            depth = std::stoi(mid);
        } catch (const std::exception&) {
            continue;
        }
        if (depth >= n_max && (!best || depth < best_depth)) {
            best = entry.path();
            best_depth = depth;
        }
    }
    return best;
}

void atomic_write(const std::string& dir, const std::string& name, const std::string& body) {
    fs::create_directories(dir);
    const fs::path final_path = fs::path(dir) / name;
    const fs::path tmp = fs::path(dir) / (name + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp);
        out << body;
        if (!out) throw std::runtime_error("cache: failed writing " + tmp.string());
    }
    fs::rename(tmp, final_path);
}

std::optional<std::string> read_all(const fs::path& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::optional<Spectrum> load_spectrum(const std::string& dir, const std::string& digest,
                                      int n_max) {
    const auto path = find_entry(dir, "spectrum_" + digest + "_", n_max);
    if (!path) return std::nullopt;
    const auto body = read_all(*path);
    if (!body) return std::nullopt;

    std::istringstream in(*body);
    std::string header;
    std::getline(in, header);
    if (header.rfind("# spectrum " + digest, 0) != 0) return std::nullopt;

    Spectrum spec;
    SpectrumEntry e;
    while (in >> e.n >> e.lambda >> e.residual >> e.node_count) {
        if (e.n != static_cast<int>(spec.entries.size()) + 1) return std::nullopt;
        spec.entries.push_back(e);
        if (e.n == n_max) break;
    }
    if (spec.n_max() < n_max) return std::nullopt;
    return spec;
}

void save_spectrum(const std::string& dir, const std::string& digest, const Spectrum& spec) {
    char line[160];
    std::string body;
    std::snprintf(line, sizeof(line), "# spectrum %s %d\n", digest.c_str(), spec.n_max());
    body += line;
    for (const SpectrumEntry& e : spec.entries) {
        std::snprintf(line, sizeof(line), "%d %.17g %.17g %d\n", e.n, e.lambda, e.residual,
                      e.node_count);
        body += line;
    }
    std::snprintf(line, sizeof(line), "spectrum_%s_%d.txt", digest.c_str(), spec.n_max());
    atomic_write(dir, line, body);
}

std::optional<NodalSet> load_nodes(const std::string& dir, const std::string& digest,
                                   int n_max) {
    const auto path = find_entry(dir, "nodes_" + digest + "_", n_max);
    if (!path) return std::nullopt;
    const auto body = read_all(*path);
    if (!body) return std::nullopt;
    try {
        NodalSet full = NodalSet::from_cache_text(*body, nullptr);
        NodalSet trimmed;
        for (int n : full.levels()) {
            if (n <= n_max) trimmed.add_level(n, full.nodes(n));
        }
        return trimmed;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void save_nodes(const std::string& dir, const std::string& digest, const NodalSet& set,
                int n_max) {
    char name[96];
    std::snprintf(name, sizeof(name), "nodes_%s_%d.txt", digest.c_str(), n_max);
    atomic_write(dir, name, set.to_cache_text(digest));
}

Spectrum cached_spectrum(const PencilProblem& prob, int n_max, const std::string& dir,
                         int workers) {
    if (!dir.empty()) {
        if (auto hit = load_spectrum(dir, prob.digest(), n_max)) return *hit;
    }
    Spectrum spec = compute_spectrum(prob, n_max, workers);
    if (!dir.empty()) save_spectrum(dir, prob.digest(), spec);
    return spec;
}

NodalSet cached_nodal_set(const PencilProblem& prob, int n_max, const std::string& dir,
                          int workers, Spectrum* spectrum_out) {
    Spectrum spec = cached_spectrum(prob, n_max, dir, workers);
    if (spectrum_out != nullptr) *spectrum_out = spec;

    const CaseTag tag =
        prob.bc == BoundaryCase::RobinInit ? CaseTag::CaseI : CaseTag::CaseII;
    if (!dir.empty()) {
        if (auto hit = load_nodes(dir, prob.digest(), n_max)) {
            hit->case_tag = tag;
            hit->source = NodalSource::solver;
            return *hit;
        }
    }
    NodalSet set;
    set.case_tag = tag;
    set.source = NodalSource::solver;
    for (int n = 1; n <= n_max; ++n) {
        const std::vector<double> xs = find_nodes(prob, spec.lambda(n));
        if (!xs.empty()) set.add_level(n, xs);
    }
    if (!dir.empty()) save_nodes(dir, prob.digest(), set, n_max);
    return set;
}

}  // namespace pencil
