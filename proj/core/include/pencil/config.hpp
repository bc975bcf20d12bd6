#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "pencil/pencil_problem.hpp"

namespace pencil {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parsed INI-style run description.  [problem] is required; [problem.bar]
/// describes the perturbed companion for stability runs; [run] holds the
/// sweep controls.
struct RunConfig {
    PencilProblem problem;
    std::optional<PencilProblem> problem_bar;
    int n_min = 2;
    int n_max = 16;
    int grid_size = 512;
    int window = 5;
    int workers = 1;
    std::string mode = "corrected";  // "paper" or "corrected"
    std::string output_dir = "out";
    std::string cache_dir = "cache";
};

/// Grammar, line oriented:
///   [problem] | [problem.bar] | [run]
///   p.cos = [[k, c], ...]     (likewise p.sin, p.poly, q.cos, q.sin, q.poly)
///   h = 0.5        H = 0.0    case = robin|dirichlet    N = 3
///   n_min/n_max/grid_size/window/workers = ints, mode/output_dir/cache_dir = strings
/// '#' and ';' start comments.  Unknown keys are errors.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

}  // namespace pencil
