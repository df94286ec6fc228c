#include "tandem/mnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tandem {

void MnnConfig::validate() const {
  if (layer_dims.size() < 3)
    throw ConfigError("mnn config: layer_dims needs at least one interior layer");
  for (std::size_t d : layer_dims)
    if (d == 0) throw ConfigError("mnn config: zero-width layer");
  if (layer_dims.front() != layer_dims.back())
    throw ConfigError("mnn config: first and last layer widths must match (mirroring)");
  std::size_t narrowest = std::numeric_limits<std::size_t>::max();
  std::size_t count = 0;
  for (std::size_t i = 1; i + 1 < layer_dims.size(); ++i) {
    if (layer_dims[i] < narrowest) {
      narrowest = layer_dims[i];
      count = 1;
    } else if (layer_dims[i] == narrowest) {
      ++count;
    }
  }
  if (count != 1)
    throw ConfigError("mnn config: interior layers must have a unique narrowest width");
  if (narrowest >= layer_dims.front())
    throw ConfigError("mnn config: bottleneck must be narrower than the input");
  if (!(learning_rate > 0.0)) throw ConfigError("mnn config: learning_rate must be positive");
  if (!(mirror_threshold > 0.0)) throw ConfigError("mnn config: mirror_threshold must be positive");
  if (!(success_fraction > 0.0) || success_fraction > 1.0)
    throw ConfigError("mnn config: success_fraction must lie in (0, 1]");
  if (weight_init_lo > weight_init_hi)
    throw ConfigError("mnn config: weight_init_lo exceeds weight_init_hi");
}

std::size_t MnnConfig::bottleneck_layer() const {
  std::size_t best = 1;
  for (std::size_t i = 2; i + 1 < layer_dims.size(); ++i)
    if (layer_dims[i] < layer_dims[best]) best = i;
  return best;
}

Mnn init_mnn(const MnnConfig& config, Rng& rng) {
  config.validate();
  Mnn net;
  net.config = config;
  const auto& dims = config.layer_dims;
  net.weights.reserve(dims.size() - 1);
  net.biases.reserve(dims.size() - 1);
  auto draw = [&]() {
    if (config.weight_init_lo == config.weight_init_hi) return config.weight_init_lo;
    return rng.uniform(config.weight_init_lo, config.weight_init_hi);
  };
  for (std::size_t t = 0; t + 1 < dims.size(); ++t) {
    Matrix w(dims[t + 1], dims[t]);
    for (double& v : w.data()) v = draw();
    Vector b(dims[t + 1]);
    for (double& v : b) v = draw();
    net.weights.push_back(std::move(w));
    net.biases.push_back(std::move(b));
  }
  return net;
}

namespace {

// Activations of every layer, input included.
std::vector<Vector> forward_trace(const Mnn& mnn, const Vector& x) {
  if (x.size() != mnn.config.input_dim())
    throw ContractError("forward: input has " + std::to_string(x.size()) +
                        " entries, network expects " + std::to_string(mnn.config.input_dim()));
  std::vector<Vector> acts;
  acts.reserve(mnn.config.layer_dims.size());
  acts.push_back(x);
  for (std::size_t t = 0; t < mnn.weights.size(); ++t) {
    Vector z = affine(mnn.weights[t], acts.back(), mnn.biases[t]);
    bool last = (t + 1 == mnn.weights.size());
    if (last && mnn.config.output_activation == OutputActivation::kLinear)
      acts.push_back(std::move(z));
    else
      acts.push_back(sigmoid(z));
  }
  return acts;
}

// Deltas dL/dz per non-input layer for L = sum (out - x)^2.
std::vector<Vector> backward_deltas(const Mnn& mnn, const std::vector<Vector>& acts) {
  const std::size_t layers = acts.size();
  std::vector<Vector> deltas(layers - 1);
  const Vector& out = acts.back();
  const Vector& x = acts.front();
  Vector d(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double g = 2.0 * (out[i] - x[i]);
    if (mnn.config.output_activation == OutputActivation::kSigmoid)
      g *= out[i] * (1.0 - out[i]);
    d[i] = g;
  }
  deltas.back() = std::move(d);
  for (std::size_t l = layers - 2; l >= 1; --l) {
    const Matrix& w = mnn.weights[l];  // maps layer l to l+1
    const Vector& next = deltas[l];    // delta of layer l+1
    const Vector& a = acts[l];
    Vector cur(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < w.rows(); ++i) acc += w(i, j) * next[i];
      cur[j] = acc * a[j] * (1.0 - a[j]);
    }
    deltas[l - 1] = std::move(cur);
  }
  return deltas;
}

// In-place SGD update; shared by backprop_step and the training loop.
void step_inplace(Mnn& net, const Vector& x, double learning_rate) {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
    throw ContractError("backprop_step: learning_rate must be finite and non-negative");
  auto acts = forward_trace(net, x);
  auto deltas = backward_deltas(net, acts);
  for (std::size_t t = 0; t < net.weights.size(); ++t) {
    Matrix& w = net.weights[t];
    Vector& b = net.biases[t];
    const Vector& delta = deltas[t];
    const Vector& a = acts[t];
    for (std::size_t i = 0; i < w.rows(); ++i) {
      double di = delta[i];
      if (!std::isfinite(di))
        throw NumericError("backprop_step: non-finite gradient in layer " + std::to_string(t + 1));
      for (std::size_t j = 0; j < w.cols(); ++j) w(i, j) -= learning_rate * di * a[j];
      b[i] -= learning_rate * di;
    }
  }
}

}  // namespace

ForwardResult forward(const Mnn& mnn, const Vector& x) {
  auto acts = forward_trace(mnn, x);
  std::size_t bl = mnn.config.bottleneck_layer();
  return ForwardResult{std::move(acts.back()), std::move(acts[bl])};
}

Vector encode(const Mnn& mnn, const Vector& x) { return forward(mnn, x).code; }

double reconstruction_loss(const Mnn& mnn, const Vector& x) {
  auto res = forward(mnn, x);
  return squared_distance(res.output, x);
}

bool is_mirrored(const Mnn& mnn, const Vector& x, double threshold) {
  return euclidean_distance(x, forward(mnn, x).output) <= threshold;
}

Gradients analytic_gradient(const Mnn& mnn, const Vector& x) {
  auto acts = forward_trace(mnn, x);
  auto deltas = backward_deltas(mnn, acts);
  Gradients g;
  g.weights.reserve(mnn.weights.size());
  g.biases.reserve(mnn.biases.size());
  for (std::size_t t = 0; t < mnn.weights.size(); ++t) {
    const Vector& delta = deltas[t];
    const Vector& a = acts[t];
    Matrix gw(mnn.weights[t].rows(), mnn.weights[t].cols());
    for (std::size_t i = 0; i < gw.rows(); ++i)
      for (std::size_t j = 0; j < gw.cols(); ++j) gw(i, j) = delta[i] * a[j];
    g.weights.push_back(std::move(gw));
    g.biases.push_back(delta);
  }
  return g;
}

Gradients numeric_gradient(const Mnn& mnn, const Vector& x, double epsilon) {
  if (!(epsilon > 0.0)) throw ContractError("numeric_gradient: epsilon must be positive");
  Gradients g;
  Mnn probe = mnn;
  for (std::size_t t = 0; t < mnn.weights.size(); ++t) {
    Matrix gw(mnn.weights[t].rows(), mnn.weights[t].cols());
    for (std::size_t idx = 0; idx < gw.data().size(); ++idx) {
      double saved = probe.weights[t].data()[idx];
      probe.weights[t].data()[idx] = saved + epsilon;
      double plus = reconstruction_loss(probe, x);
      probe.weights[t].data()[idx] = saved - epsilon;
      double minus = reconstruction_loss(probe, x);
      probe.weights[t].data()[idx] = saved;
      gw.data()[idx] = (plus - minus) / (2.0 * epsilon);
    }
    g.weights.push_back(std::move(gw));
    Vector gb(mnn.biases[t].size());
    for (std::size_t i = 0; i < gb.size(); ++i) {
      double saved = probe.biases[t][i];
      probe.biases[t][i] = saved + epsilon;
      double plus = reconstruction_loss(probe, x);
      probe.biases[t][i] = saved - epsilon;
      double minus = reconstruction_loss(probe, x);
      probe.biases[t][i] = saved;
      gb[i] = (plus - minus) / (2.0 * epsilon);
    }
    g.biases.push_back(std::move(gb));
  }
  return g;
}

std::pair<Mnn, double> backprop_step(const Mnn& mnn, const Vector& x, double learning_rate) {
  Mnn updated = mnn;
  step_inplace(updated, x, learning_rate);
  double distance = euclidean_distance(x, forward(updated, x).output);
  return {std::move(updated), distance};
}

std::pair<Mnn, MirrorReport> train_mirror(const Mnn& mnn, const std::vector<Vector>& data,
                                          const MnnConfig& config, Rng& rng) {
  config.validate();
  if (data.empty()) throw ContractError("train_mirror: empty training set");
  for (const Vector& s : data)
    if (s.size() != mnn.config.input_dim())
      throw ContractError("train_mirror: sample width " + std::to_string(s.size()) +
                          " does not match network input " +
                          std::to_string(mnn.config.input_dim()));

  Mnn net = mnn;
  auto measure = [&](MirrorReport& rep) {
    std::size_t mirrored = 0;
    double total = 0.0;
    for (const Vector& s : data) {
      double d = euclidean_distance(s, forward(net, s).output);
      total += d;
      if (d <= config.mirror_threshold) ++mirrored;
    }
    rep.mirrored_fraction = static_cast<double>(mirrored) / static_cast<double>(data.size());
    rep.mean_reconstruction_distance = total / static_cast<double>(data.size());
  };

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  MirrorReport report;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t i : order) step_inplace(net, data[i], config.learning_rate);
    report.epochs_run = epoch;
    measure(report);
    if (report.mirrored_fraction >= config.success_fraction) {
      report.converged = true;
      return {std::move(net), report};
    }
  }
  report.epochs_run = config.max_epochs;
  if (config.max_epochs == 0) measure(report);  // loop never measured
  report.converged = false;
  throw TrainingError("train_mirror: epoch budget (" + std::to_string(config.max_epochs) +
                          ") spent at mirrored fraction " +
                          std::to_string(report.mirrored_fraction),
                      std::move(net), report);
}

}  // namespace tandem
