#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace pencil {

enum class CaseTag { CaseI, CaseII, Unknown };
enum class NodalSource { solver, asymptotic, synthetic, file };

/// Double-indexed family of interior node abscissae: level n holds the nodes
/// of the n-th eigenfunction, strictly increasing inside (0, pi).  Levels are
/// stored as given; the pi-padding some metric sums need never lives here.
class NodalSet {
public:
    NodalSet() = default;

    /// Validates: nodes strictly increasing, inside (0, pi), and K(n)
    /// nondecreasing against already-stored levels.
    void add_level(int n, std::vector<double> nodes);

    bool has_level(int n) const { return levels_.count(n) != 0; }
    const std::vector<double>& nodes(int n) const;
    std::vector<int> levels() const;
    int level_count() const { return static_cast<int>(levels_.size()); }
    int node_count(int n) const { return static_cast<int>(nodes(n).size()); }

    CaseTag case_tag = CaseTag::Unknown;
    NodalSource source = NodalSource::synthetic;

    /// Idealized half-offset family: level n = {(k - 1/2) pi / n, k = 1..n}.
    static NodalSet trivial_case1(int n_max);
    /// Idealized integer-offset family: level n = {k pi / n, k = 1..n-1}.
    static NodalSet trivial_case2(int n_max);

    /// Cache text format: header line "# nodes <digest>", rows "n j x_j".
    std::string to_cache_text(const std::string& digest) const;
    static NodalSet from_cache_text(const std::string& text, std::string* digest_out);

private:
    std::map<int, std::vector<double>> levels_;
};

/// Consecutive differences of the stored nodes of level n (K-1 values, no
/// padding).
std::vector<double> grid_lengths(const NodalSet& set, int n);

/// Largest j with X_j <= x (virtual X_0 = 0 gives 0 for x below the first
/// node).  Right-continuous in x.
int locate_index(const NodalSet& set, int n, double x);

/// delta^m a_j = (delta^{m-1} a_{j+1} - delta^{m-1} a_j) / a_j; the divisor is
/// always the base sequence.  Result has size(a) - m entries.  Throws
/// std::domain_error naming the offending index if a base entry is zero.
std::vector<double> difference_quotient(std::span<const double> a, int m);

}  // namespace pencil
