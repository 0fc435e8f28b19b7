#include "hardy/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hardy {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Vertex: return "vertex";
    case Strategy::SupportGrid: return "support_grid";
    case Strategy::MultistartAscent: return "multistart_ascent";
    case Strategy::Auto: return "auto";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "vertex") return Strategy::Vertex;
  if (name == "support_grid") return Strategy::SupportGrid;
  if (name == "multistart_ascent") return Strategy::MultistartAscent;
  if (name == "auto") return Strategy::Auto;
  return std::nullopt;
}

double rhs_value(const RatioProblem& P, std::span<const double> a) {
  if (P.p == kInf) {
    double m = 0.0;
    for (std::size_t n = 0; n < P.dim; ++n)
      if (a[n] > 0.0) m = std::max(m, P.weights[n] * a[n]);
    return m;
  }
  double s = 0.0;
  for (std::size_t n = 0; n < P.dim; ++n)
    if (a[n] > 0.0) s += P.weights[n] * std::pow(a[n], P.p);
  return std::pow(s, 1.0 / P.p);
}

namespace {

constexpr double kFloor = -60.0;  // log-weight treated as an exact zero
constexpr double kGridDecades = 4.0;
constexpr std::size_t kKeep = 4;

struct Candidate {
  double value;
  std::vector<double> x;
};

class Searcher {
 public:
  Searcher(const RatioProblem& P, std::size_t budget) : P_(P), budget_(budget) {
    for (std::size_t n = 0; n < P.dim; ++n)
      if (P.weights[n] > 0.0) {
        active_.push_back(n);
        log_w_.push_back(std::log(P.weights[n]));
      }
    a_.assign(P.dim, 0.0);
  }

  const std::vector<std::size_t>& active() const { return active_; }
  std::size_t evaluations() const { return evals_; }
  bool exhausted() const { return evals_ >= budget_; }
  std::size_t remaining() const { return budget_ > evals_ ? budget_ - evals_ : 0; }

  double raw_lhs(std::span<const double> a) {
    ++evals_;
    return P_.lhs(a);
  }

  // Ratio at log-weights x over the active coordinates.
  double value(const std::vector<double>& x) {
    const double top = *std::max_element(x.begin(), x.end());
    double mass = 0.0;
    std::fill(a_.begin(), a_.end(), 0.0);
    for (std::size_t k = 0; k < active_.size(); ++k) {
      if (x[k] <= kFloor + top) continue;
      const double rel = x[k] - top;
      mass += std::exp(rel);
      a_[active_[k]] = std::exp((rel - log_w_[k]) / P_.p);
    }
    const double r = raw_lhs(a_) / std::pow(mass, 1.0 / P_.p);
    consider(r, x);
    return r;
  }

  std::vector<double> to_log(std::span<const double> a) const {
    std::vector<double> x(active_.size(), kFloor);
    double top = kFloor;
    for (std::size_t k = 0; k < active_.size(); ++k) {
      const double ak = a[active_[k]];
      if (ak > 0.0) {
        x[k] = log_w_[k] + P_.p * std::log(ak);
        top = std::max(top, x[k]);
      }
    }
    for (auto& xi : x) xi = std::max(xi - top, kFloor);
    return x;
  }

  std::vector<double> to_sequence(const std::vector<double>& x) const {
    const double top = *std::max_element(x.begin(), x.end());
    std::vector<double> a(P_.dim, 0.0);
    for (std::size_t k = 0; k < active_.size(); ++k)
      if (x[k] > kFloor + top) a[active_[k]] = std::exp((x[k] - top - log_w_[k]) / P_.p);
    return a;
  }

  const std::vector<Candidate>& top() const { return top_; }

 private:
  void consider(double r, const std::vector<double>& x) {
    if (!(r >= 0.0)) return;
    for (const auto& c : top_)
      if (c.x == x) return;
    if (top_.size() == kKeep && r <= top_.back().value) return;
    auto it = std::find_if(top_.begin(), top_.end(), [&](const Candidate& c) { return r > c.value; });
    top_.insert(it, Candidate{r, x});
    if (top_.size() > kKeep) top_.pop_back();
  }

  const RatioProblem& P_;
  std::size_t budget_;
  std::size_t evals_ = 0;
  std::vector<std::size_t> active_;
  std::vector<double> log_w_;
  std::vector<double> a_;
  std::vector<Candidate> top_;
};

std::vector<double> unit_log(std::size_t d, std::size_t k) {
  std::vector<double> x(d, kFloor);
  x[k] = 0.0;
  return x;
}

void run_vertex(Searcher& s) {
  const std::size_t d = s.active().size();
  for (std::size_t k = 0; k < d; ++k) s.value(unit_log(d, k));
}

std::size_t binom2(std::size_t d) { return d * (d - 1) / 2; }
std::size_t binom3(std::size_t d) { return d < 3 ? 0 : d * (d - 1) * (d - 2) / 6; }

void run_grid(Searcher& s, std::size_t budget) {
  const std::size_t d = s.active().size();
  run_vertex(s);
  if (d < 2) return;
  auto cost = [&](std::size_t G, bool triples) {
    return d + binom2(d) * G + (triples ? binom3(d) * G * G : 0);
  };
  bool triples = true;
  std::size_t G = 2;
  if (cost(G, true) > budget) triples = false;
  if (!triples && cost(G, false) > budget) return;
  while (G < 401 && cost(G + 1, triples) <= budget) ++G;

  std::vector<double> grid(G);
  for (std::size_t k = 0; k < G; ++k)
    grid[k] = std::numbers::ln10 *
              (-kGridDecades + 2.0 * kGridDecades * static_cast<double>(k) / static_cast<double>(G - 1));

  std::vector<double> x(d, kFloor);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      x[i] = 0.0;
      for (double gj : grid) {
        x[j] = gj;
        s.value(x);
      }
      if (triples)
        for (std::size_t k = j + 1; k < d; ++k) {
          for (double gj : grid)
            for (double gk : grid) {
              x[j] = gj;
              x[k] = gk;
              s.value(x);
            }
          x[k] = kFloor;
        }
      x[i] = x[j] = kFloor;
    }
}

void ascend(Searcher& s, std::vector<double> x, std::size_t budget) {
  const std::size_t stop = s.evaluations() + budget;
  const std::size_t d = x.size();
  double cur = s.value(x);
  double h = 1.0;
  std::vector<double> trial;
  while (h > 1e-10 && s.evaluations() + 2 * d <= stop) {
    double best = cur;
    std::vector<double> best_x;
    for (std::size_t c = 0; c < d; ++c)
      for (double dir : {1.0, -1.0}) {
        trial = x;
        trial[c] = std::clamp(x[c] + dir * h, kFloor, -kFloor);
        if (trial[c] == x[c]) continue;
        const double top = *std::max_element(trial.begin(), trial.end());
        for (auto& t : trial) t = std::max(t - top, kFloor);
        const double val = s.value(trial);
        if (val > best) {
          best = val;
          best_x = trial;
        }
      }
    if (!best_x.empty()) {
      x = std::move(best_x);
      cur = best;
      h = std::min(2.0 * h, 8.0);
    } else {
      h *= 0.5;
    }
  }
}

void run_ascent(Searcher& s, std::mt19937_64& rng, std::vector<std::vector<double>> starts,
                std::size_t budget) {
  const std::size_t d = s.active().size();
  constexpr std::size_t kRandomStarts = 8;
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);
  std::bernoulli_distribution sparse(0.5);
  for (std::size_t r = 0; r < kRandomStarts; ++r) {
    std::vector<double> x(d);
    for (auto& xi : x) xi = coord(rng);
    if (sparse(rng) && d > 3) {
      std::vector<double> y(d, kFloor);
      const std::size_t keep = 1 + pick(rng) % 3;
      for (std::size_t k = 0; k < keep; ++k) {
        const std::size_t j = pick(rng);
        y[j] = x[j];
      }
      x = std::move(y);
    }
    starts.push_back(std::move(x));
  }
  const std::size_t stop = s.evaluations() + budget;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const std::size_t left = stop > s.evaluations() ? stop - s.evaluations() : 0;
    const std::size_t share = left / (starts.size() - k);
    if (share < 2 * d + 1) continue;
    ascend(s, starts[k], share);
  }
}

}  // namespace

SearchResult maximize_ratio(const RatioProblem& P, Strategy strategy, std::size_t budget,
                            std::uint64_t seed, const std::vector<std::vector<double>>& seeds) {
  if (P.dim == 0 || P.weights.size() != P.dim || !P.lhs)
    throw std::invalid_argument("malformed ratio problem");
  if (budget < P.dim)
    throw std::invalid_argument("budget must be at least the window length (" +
                                std::to_string(P.dim) + ")");
  if (!(P.p > 0.0)) throw std::invalid_argument("p must be positive");

  Searcher s(P, budget);
  SearchResult out;
  out.strategy = to_string(strategy);

  // Free coordinates: zero weight on the right-hand side.
  std::vector<double> e(P.dim, 0.0);
  for (std::size_t n = 0; n < P.dim; ++n) {
    if (P.weights[n] > 0.0) continue;
    e[n] = 1.0;
    const double l = s.raw_lhs(e);
    if (l > 0.0) {
      out.estimate = ExtReal::infinity();
      out.witness = e;
      out.evaluations = s.evaluations();
      out.exact = true;
      return out;
    }
    e[n] = 0.0;
  }
  if (s.active().empty()) {
    out.witness.assign(P.dim, 0.0);
    out.witness[0] = 1.0;
    out.evaluations = s.evaluations();
    out.exact = true;
    return out;
  }

  if (P.p == kInf) {
    std::vector<double> a(P.dim, 0.0);
    for (std::size_t k : s.active()) a[k] = 1.0 / P.weights[k];
    out.witness = a;
    out.exact = true;
    out.strategy = "exact";
  } else {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> starts;
    for (const auto& a : seeds)
      if (a.size() == P.dim) starts.push_back(s.to_log(a));
    auto ascent_from_top = [&](std::size_t share) {
      for (const auto& c : s.top()) starts.push_back(c.x);
      run_ascent(s, rng, starts, share);
    };
    switch (strategy) {
      case Strategy::Vertex:
        run_vertex(s);
        out.exact = P.vertex_exact;
        break;
      case Strategy::SupportGrid:
        run_grid(s, budget);
        break;
      case Strategy::MultistartAscent:
        run_vertex(s);
        ascent_from_top(s.remaining());
        break;
      case Strategy::Auto:
        if (P.vertex_exact) {
          run_vertex(s);
          out.exact = true;
          out.strategy = "auto:vertex";
        } else if (P.dim <= 8) {
          run_grid(s, budget / 2);
          ascent_from_top(s.remaining());
          out.strategy = "auto:support_grid+ascent";
        } else {
          run_vertex(s);
          ascent_from_top(s.remaining());
          out.strategy = "auto:multistart_ascent";
        }
        break;
    }
    out.witness = s.to_sequence(s.top().front().x);
  }

  const double m = *std::max_element(out.witness.begin(), out.witness.end());
  if (m > 0.0)
    for (auto& x : out.witness) x /= m;
  out.estimate = quotient(ExtReal(P.lhs(out.witness)), ExtReal(rhs_value(P, out.witness)));
  out.evaluations = s.evaluations() + 1;
  return out;
}

}  // namespace hardy
