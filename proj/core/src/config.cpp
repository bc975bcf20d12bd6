#include "pencil/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pencil {

namespace {

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r\n");
    if (from == std::string::npos) return "";
    const auto to = s.find_last_not_of(" \t\r\n");
    return s.substr(from, to - from + 1);
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "config line %d: %s", line_no, msg.c_str());
    throw ConfigError(buf);
}

double parse_number(const std::string& v, int line_no) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (trim(v.substr(used)).empty()) return d;
    } catch (const std::exception&) {
    }
    fail(line_no, "expected a number, got '" + v + "'");
}

int parse_int(const std::string& v, int line_no) {
    const double d = parse_number(v, line_no);
    const int i = static_cast<int>(d);
    if (i != d) fail(line_no, "expected an integer, got '" + v + "'");
    return i;
}

void apply_problem_key(PencilProblem* prob, const std::string& key, const std::string& value,
                       int line_no) {
    if (key.size() > 2 && key[1] == '.' && (key[0] == 'p' || key[0] == 'q')) {
        RealFunction& f = key[0] == 'p' ? prob->p : prob->q;
        const std::string kind = key.substr(2);
        if (kind != "cos" && kind != "sin" && kind != "poly") {
            fail(line_no, "unknown coefficient list '" + key + "'");
        }
        try {
            f.add_terms_from_list(kind, value);
        } catch (const std::exception& e) {
            fail(line_no, e.what());
        }
        return;
    }
    if (key == "h") {
        prob->h = parse_number(value, line_no);
    } else if (key == "H") {
        prob->H = parse_number(value, line_no);
    } else if (key == "case") {
        if (value == "robin") {
            prob->bc = BoundaryCase::RobinInit;
        } else if (value == "dirichlet") {
            prob->bc = BoundaryCase::DirichletInit;
        } else {
            fail(line_no, "case must be robin or dirichlet, got '" + value + "'");
        }
    } else if (key == "N") {
        const int n = parse_int(value, line_no);
        if (n < 0) fail(line_no, "N must be nonnegative");
        prob->max_derivative_order = n;
    } else {
        fail(line_no, "unknown problem key '" + key + "'");
    }
}

void apply_run_key(RunConfig* cfg, const std::string& key, const std::string& value,
                   int line_no) {
    if (key == "n_min") {
        cfg->n_min = parse_int(value, line_no);
    } else if (key == "n_max") {
        cfg->n_max = parse_int(value, line_no);
    } else if (key == "grid_size") {
        cfg->grid_size = parse_int(value, line_no);
    } else if (key == "window") {
        cfg->window = parse_int(value, line_no);
    } else if (key == "workers") {
        cfg->workers = parse_int(value, line_no);
    } else if (key == "mode") {
        if (value != "paper" && value != "corrected") {
            fail(line_no, "mode must be paper or corrected");
        }
        cfg->mode = value;
    } else if (key == "output_dir") {
        cfg->output_dir = value;
    } else if (key == "cache_dir") {
        cfg->cache_dir = value;
    } else {
        fail(line_no, "unknown run key '" + key + "'");
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    bool saw_problem = false;
    bool saw_bar = false;
    enum class Section { none, problem, problem_bar, run } section = Section::none;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name == "problem") {
                section = Section::problem;
                saw_problem = true;
            } else if (name == "problem.bar") {
                section = Section::problem_bar;
                saw_bar = true;
                if (!cfg.problem_bar) cfg.problem_bar.emplace();
            } else if (name == "run") {
                section = Section::run;
            } else {
                fail(line_no, "unknown section [" + name + "]");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");

        switch (section) {
            case Section::none:
                fail(line_no, "key outside any section");
            case Section::problem:
                apply_problem_key(&cfg.problem, key, value, line_no);
                break;
            case Section::problem_bar:
                apply_problem_key(&*cfg.problem_bar, key, value, line_no);
                break;
            case Section::run:
                apply_run_key(&cfg, key, value, line_no);
                break;
        }
    }

    if (!saw_problem) throw ConfigError("config: missing [problem] section");
    if (saw_bar && cfg.problem_bar->bc != cfg.problem.bc) {
        throw ConfigError("config: problem and problem.bar must share the boundary case");
    }
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) {
        throw ConfigError("config: need 1 <= n_min <= n_max");
    }
    if (cfg.grid_size < 1 || cfg.window < 1 || cfg.workers < 1) {
        throw ConfigError("config: grid_size, window and workers must be positive");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace pencil
