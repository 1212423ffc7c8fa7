#include "sykq/sykmc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "sykq/parallel.hpp"
#include "sykq/rng.hpp"

namespace sykq {

namespace {

constexpr int kDenseMaxSites = 12;  // dense storage ceiling: dimension 2^12
constexpr std::uint64_t kProbeStream = 0x50000000;

double draw(CouplingLaw law, std::uint64_t seed, std::uint64_t rank, std::uint64_t sample_index,
            std::uint64_t stream) {
  return law == CouplingLaw::gaussian ? rng::gaussian(seed, rank, sample_index, stream)
                                      : rng::rademacher(seed, rank, sample_index, stream);
}

std::uint64_t reverse_low_bits(std::uint64_t m, int width) {
  std::uint64_t out = 0;
  for (int s = 0; s < width; ++s)
    if (m >> s & 1) out |= std::uint64_t{1} << (width - 1 - s);
  return out;
}

// Pauli strings have one entry per column; dense accumulation is O(dim) each.
struct StringAction {
  std::uint64_t x_bits = 0, z_bits = 0;
  std::complex<double> coef;
};

StringAction action_of(const PauliString& p) {
  static constexpr std::complex<double> unit[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {reverse_low_bits(p.x_mask, p.sites), reverse_low_bits(p.z_mask, p.sites),
          unit[p.phase & 3]};
}

void add_string(Eigen::MatrixXcd& into, const StringAction& a, std::complex<double> scale) {
  const std::int64_t dim = into.rows();
  std::complex<double> c = a.coef * scale;
  for (std::int64_t b = 0; b < dim; ++b) {
    double sign = (std::popcount(static_cast<std::uint64_t>(b) & a.z_bits) & 1) ? -1.0 : 1.0;
    into(b ^ static_cast<std::int64_t>(a.x_bits), b) += c * sign;
  }
}

struct ModelTables {
  FiniteModel model;
  std::vector<StringAction> actions;
  double norm;  // |I_n|^{-1/2}

  explicit ModelTables(const FiniteModel& m) : model(m) {
    auto table = make_psi_table(m.rep(), m.q_n);
    actions.reserve(table.size());
    for (const auto& p : table) actions.push_back(action_of(p));
    norm = 1.0 / std::sqrt(static_cast<double>(m.index_count()));
  }

  Eigen::MatrixXcd dense(const std::vector<double>& couplings) const {
    const std::int64_t dim = std::int64_t{1} << model.sites();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (size_t r = 0; r < actions.size(); ++r) add_string(h, actions[r], couplings[r] * norm);
    return h;
  }

  void matvec(const std::vector<double>& couplings, const Eigen::VectorXcd& v,
              Eigen::VectorXcd& out) const {
    const std::int64_t dim = v.size();
    out.setZero(dim);
    for (size_t r = 0; r < actions.size(); ++r) {
      const StringAction& a = actions[r];
      std::complex<double> c = a.coef * (couplings[r] * norm);
      for (std::int64_t b = 0; b < dim; ++b) {
        double sign = (std::popcount(static_cast<std::uint64_t>(b) & a.z_bits) & 1) ? -1.0 : 1.0;
        out[b ^ static_cast<std::int64_t>(a.x_bits)] += c * sign * v[b];
      }
    }
  }

  void check_coupling_count(const std::vector<double>& couplings) const {
    if (couplings.size() != actions.size())
      throw std::invalid_argument("coupling vector length does not match |I_n|");
  }
};

double normalized_real_trace(const Eigen::MatrixXcd& m) {
  return m.trace().real() / static_cast<double>(m.rows());
}

std::string color_word_str(const std::vector<int>& eps) {
  std::string out;
  for (size_t i = 0; i < eps.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(eps[i]);
  }
  return out;
}

std::string model_str(const FiniteModel& m) {
  return "(" + std::to_string(m.n) + "," + std::to_string(m.q_n) + ")";
}

}  // namespace

SykSample sample(const FiniteModel& model, CouplingLaw law, std::uint64_t seed,
                 std::uint64_t sample_index, std::uint64_t stream) {
  SykSample s{model, law, seed, sample_index, stream, {}};
  std::uint64_t count = model.index_count();
  s.couplings.resize(count);
  for (std::uint64_t r = 0; r < count; ++r)
    s.couplings[r] = draw(law, seed, r, sample_index, stream);
  return s;
}

BrownianCouplings dynamical_sample(const FiniteModel& model, const std::vector<double>& times,
                                   std::uint64_t seed, std::uint64_t sample_index) {
  if (times.empty()) throw std::invalid_argument("dynamical_sample: empty time grid");
  for (size_t j = 0; j < times.size(); ++j) {
    if (times[j] < 0) throw std::invalid_argument("dynamical_sample: negative time");
    if (j > 0 && times[j] <= times[j - 1])
      throw std::invalid_argument("dynamical_sample: grid must be strictly increasing");
  }
  std::uint64_t count = model.index_count();
  BrownianCouplings out{model, times, {}};
  out.values.assign(times.size(), std::vector<double>(count, 0.0));
  for (std::uint64_t r = 0; r < count; ++r) {
    double path = 0.0, prev_t = 0.0;
    for (size_t j = 0; j < times.size(); ++j) {
      path += std::sqrt(times[j] - prev_t) * rng::gaussian(seed, r, sample_index, j);
      prev_t = times[j];
      out.values[j][r] = path;
    }
  }
  return out;
}

Eigen::MatrixXcd dense_hamiltonian(const FiniteModel& model,
                                   const std::vector<double>& couplings) {
  if (model.sites() > kDenseMaxSites)
    throw std::invalid_argument("dense_hamiltonian: dimension exceeds dense ceiling 2^12");
  ModelTables t(model);
  t.check_coupling_count(couplings);
  return t.dense(couplings);
}

Eigen::MatrixXcd dense_hamiltonian(const SykSample& s) {
  return dense_hamiltonian(s.model, s.couplings);
}

Eigen::VectorXcd apply_hamiltonian(const FiniteModel& model, const std::vector<double>& couplings,
                                   const Eigen::VectorXcd& v) {
  if (v.size() != (std::int64_t{1} << model.sites()))
    throw std::invalid_argument("apply_hamiltonian: dimension mismatch");
  ModelTables t(model);
  t.check_coupling_count(couplings);
  Eigen::VectorXcd out;
  t.matvec(couplings, v, out);
  return out;
}

HutchinsonEstimate hutchinson_trace_power(const FiniteModel& model,
                                          const std::vector<double>& couplings, int k, int probes,
                                          std::uint64_t seed, std::uint64_t sample_index) {
  if (k < 1) throw std::invalid_argument("hutchinson_trace_power: k must be >= 1");
  if (probes < 1) throw std::invalid_argument("hutchinson_trace_power: need at least one probe");
  ModelTables t(model);
  t.check_coupling_count(couplings);
  const std::int64_t dim = std::int64_t{1} << model.sites();
  Eigen::VectorXcd z(dim), v(dim), w(dim);
  double acc = 0.0, acc2 = 0.0;
  for (int p = 0; p < probes; ++p) {
    for (std::int64_t e = 0; e < dim; ++e)
      z[e] = rng::rademacher(seed, static_cast<std::uint64_t>(e), sample_index, kProbeStream + p);
    v = z;
    for (int j = 0; j < k; ++j) {
      t.matvec(couplings, v, w);
      v.swap(w);
    }
    double est = (z.dot(v)).real() / static_cast<double>(dim);
    acc += est;
    acc2 += est * est;
  }
  HutchinsonEstimate out;
  out.probes = probes;
  out.value = acc / probes;
  if (probes > 1) {
    double var = (acc2 - acc * acc / probes) / (probes - 1);
    out.std_error = std::sqrt(std::max(0.0, var) / probes);
  }
  return out;
}

double trace_power(const SykSample& s, int k, const EstimatorConfig& config) {
  if (k < 1) throw std::invalid_argument("trace_power: k must be >= 1");
  if (config.mode == EstimatorConfig::Mode::dense) {
    if (s.model.sites() > kDenseMaxSites)
      throw std::invalid_argument("trace_power: dimension exceeds dense mode ceiling 2^12");
    Eigen::MatrixXcd h = dense_hamiltonian(s);
    Eigen::MatrixXcd m = h;
    for (int j = 1; j < k; ++j) m = m * h;
    return normalized_real_trace(m);
  }
  return hutchinson_trace_power(s.model, s.couplings, k, config.probes, s.seed, s.sample_index)
      .value;
}

namespace {

// Shared Monte Carlo driver: evaluates `m` trace words per sample into
// preallocated series, parallel over samples, then reduces serially so the
// result depends only on the seed.
struct TraceWordJob {
  const FiniteModel& model;
  const EstimatorConfig& config;
  // words expressed over distinct streams: word_streams[j] lists, in product
  // order, which coupling stream each factor uses
  std::vector<std::vector<int>> word_streams;
  int n_streams = 0;
  bool brownian = false;
  std::vector<double> grid;  // brownian grid when brownian = true

  std::vector<std::vector<double>> run() const {
    const long long n = config.n_samples;
    if (n < 1) throw std::invalid_argument("n_samples must be >= 1");
    int m = static_cast<int>(word_streams.size());
    std::vector<std::vector<double>> series(m, std::vector<double>(n, 0.0));
    bool dense = config.mode == EstimatorConfig::Mode::dense;
    if (dense && model.sites() > kDenseMaxSites)
      throw std::invalid_argument("dense mode ceiling 2^12 exceeded; use hutchinson");
    ModelTables tables(model);
    const std::int64_t dim = std::int64_t{1} << model.sites();

    parallel_chunks(static_cast<std::uint64_t>(n), config.threads,
                    [&](std::uint64_t lo, std::uint64_t hi, int) {
      std::vector<std::vector<double>> couplings(n_streams);
      std::vector<Eigen::MatrixXcd> hs(dense ? n_streams : 0);
      Eigen::MatrixXcd acc;
      Eigen::VectorXcd z(dim), v(dim), w(dim);
      for (std::uint64_t i = lo; i < hi; ++i) {
        if (brownian) {
          BrownianCouplings bc = dynamical_sample(model, grid, config.seed, i);
          for (int s = 0; s < n_streams; ++s) couplings[s] = std::move(bc.values[s]);
        } else {
          for (int s = 0; s < n_streams; ++s)
            couplings[s] = sample(model, config.law, config.seed, i, s).couplings;
        }
        if (dense) {
          for (int s = 0; s < n_streams; ++s) hs[s] = tables.dense(couplings[s]);
          for (int j = 0; j < static_cast<int>(word_streams.size()); ++j) {
            const auto& streams = word_streams[j];
            acc = hs[streams[0]];
            for (size_t f = 1; f < streams.size(); ++f) acc = acc * hs[streams[f]];
            series[j][i] = normalized_real_trace(acc);
          }
        } else {
          for (int j = 0; j < static_cast<int>(word_streams.size()); ++j) {
            const auto& streams = word_streams[j];
            double probe_acc = 0.0;
            for (int p = 0; p < config.probes; ++p) {
              for (std::int64_t e = 0; e < dim; ++e)
                z[e] = rng::rademacher(config.seed, static_cast<std::uint64_t>(e), i,
                                       kProbeStream + p);
              v = z;
              for (auto it = streams.rbegin(); it != streams.rend(); ++it) {
                tables.matvec(couplings[*it], v, w);
                v.swap(w);
              }
              probe_acc += (z.dot(v)).real() / static_cast<double>(dim);
            }
            series[j][i] = probe_acc / config.probes;
          }
        }
      }
    });
    return series;
  }
};

}  // namespace

CumulantEstimate mc_moment(const std::vector<int>& eps, const FiniteModel& model,
                           const EstimatorConfig& config) {
  if (eps.empty()) throw std::invalid_argument("mc_moment: empty word");
  std::vector<int> colors;  // distinct colors, order of first appearance
  std::vector<int> streams(eps.size());
  for (size_t i = 0; i < eps.size(); ++i) {
    auto it = std::find(colors.begin(), colors.end(), eps[i]);
    if (it == colors.end()) {
      streams[i] = static_cast<int>(colors.size());
      colors.push_back(eps[i]);
    } else {
      streams[i] = static_cast<int>(it - colors.begin());
    }
  }
  TraceWordJob job{model, config, {streams}, static_cast<int>(colors.size()), false, {}};
  auto series = job.run();
  CumulantResult r = joint_cumulant_jackknife(series, config.batches);
  return {r.value, r.std_error, r.n_samples,
          "moment " + model_str(model) + " eps=" + color_word_str(eps)};
}

CumulantEstimate mc_fluctuation(const FluctuationSpec& spec, const FiniteModel& model,
                                const EstimatorConfig& config) {
  if (config.law != CouplingLaw::gaussian)
    throw std::invalid_argument(
        "mc_fluctuation: Gaussian couplings required (the fluctuation limit is stated for "
        "centered Gaussian coefficients)");
  std::vector<int> colors;
  std::vector<int> flat_streams(spec.eps.size());
  for (size_t i = 0; i < spec.eps.size(); ++i) {
    auto it = std::find(colors.begin(), colors.end(), spec.eps[i]);
    if (it == colors.end()) {
      flat_streams[i] = static_cast<int>(colors.size());
      colors.push_back(spec.eps[i]);
    } else {
      flat_streams[i] = static_cast<int>(it - colors.begin());
    }
  }
  std::vector<std::vector<int>> word_streams;
  int at = 0;
  for (int s : spec.sizes) {
    word_streams.emplace_back(flat_streams.begin() + at, flat_streams.begin() + at + s);
    at += s;
  }
  TraceWordJob job{model, config, std::move(word_streams), static_cast<int>(colors.size()),
                   false, {}};
  auto series = job.run();
  CumulantResult r = joint_cumulant_jackknife(series, config.batches);
  double scale = std::pow(static_cast<double>(model.index_count()), spec.order() - 1);
  std::string sizes_str;
  for (size_t i = 0; i < spec.sizes.size(); ++i)
    sizes_str += (i ? "," : "") + std::to_string(spec.sizes[i]);
  return {r.value * scale, r.std_error * scale, r.n_samples,
          "fluctuation " + model_str(model) + " sizes=" + sizes_str +
              " eps=" + color_word_str(spec.eps)};
}

CumulantEstimate mc_process_moment(const std::vector<double>& times, const FiniteModel& model,
                                   const EstimatorConfig& config) {
  if (times.empty()) throw std::invalid_argument("mc_process_moment: empty time word");
  for (double t : times)
    if (t < 0) throw std::invalid_argument("mc_process_moment: negative time");
  std::vector<double> grid(times);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (!grid.empty() && grid.front() == 0.0) grid.erase(grid.begin());  // H(0) = 0 handled below
  std::vector<int> streams(times.size());
  bool any_zero = false;
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] == 0.0) {
      any_zero = true;
      continue;
    }
    streams[i] = static_cast<int>(std::lower_bound(grid.begin(), grid.end(), times[i]) -
                                  grid.begin());
  }
  std::string label = "process " + model_str(model) + " times=";
  for (size_t i = 0; i < times.size(); ++i) {
    if (i) label += ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", times[i]);
    label += buf;
  }
  if (any_zero)  // H(0) has all couplings zero, the product trace vanishes
    return {0.0, 0.0, config.n_samples, label};

  TraceWordJob job{model, config, {streams}, static_cast<int>(grid.size()), true, grid};
  auto series = job.run();
  CumulantResult r = joint_cumulant_jackknife(series, config.batches);
  return {r.value, r.std_error, r.n_samples, label};
}

}  // namespace sykq
