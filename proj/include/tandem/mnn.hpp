#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tandem/numerics.hpp"

namespace tandem {

enum class OutputActivation { kSigmoid, kLinear };

/// Architecture and training knobs of a mirroring network. The layer list is
/// converging-diverging with equal first and last widths; the unique narrowest
/// interior layer is the bottleneck whose activations serve as the feature code.
struct MnnConfig {
  std::vector<std::size_t> layer_dims;
  double mirror_threshold = 0.8;
  double success_fraction = 0.95;
  double learning_rate = 0.025;
  double weight_init_lo = -0.25;
  double weight_init_hi = 0.25;
  std::size_t max_epochs = 5000;
  OutputActivation output_activation = OutputActivation::kSigmoid;

  /// Throws ConfigError if any invariant fails.
  void validate() const;

  /// Index into layer_dims of the unique narrowest interior layer.
  std::size_t bottleneck_layer() const;
  std::size_t bottleneck_dim() const { return layer_dims[bottleneck_layer()]; }
  std::size_t input_dim() const { return layer_dims.front(); }
};

/// A mirroring network: weights[t] maps layer t to layer t+1
/// (shape layer_dims[t+1] x layer_dims[t]), biases[t] belongs to layer t+1.
struct Mnn {
  MnnConfig config;
  std::vector<Matrix> weights;
  std::vector<Vector> biases;

  bool operator==(const Mnn& other) const {
    return config.layer_dims == other.config.layer_dims && weights == other.weights &&
           biases == other.biases;
  }
};

struct ForwardResult {
  Vector output;  // reconstruction, same width as the input
  Vector code;    // bottleneck activations
};

struct MirrorReport {
  std::size_t epochs_run = 0;
  double mirrored_fraction = 0.0;
  double mean_reconstruction_distance = 0.0;
  bool converged = false;
};

/// Thrown when the epoch budget runs out below the success fraction. Carries
/// the final network and report so callers may accept the partial result.
struct TrainingError : Error {
  TrainingError(const std::string& msg, Mnn net, MirrorReport rep)
      : Error(msg), network(std::move(net)), report(rep) {}
  Mnn network;
  MirrorReport report;
};

/// Per-parameter gradient of the reconstruction loss, same shapes as the network.
struct Gradients {
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
};

/// Fresh network with every weight and bias drawn uniformly from the config's
/// init range (a degenerate lo == hi range fills the constant without draws).
Mnn init_mnn(const MnnConfig& config, Rng& rng);

ForwardResult forward(const Mnn& mnn, const Vector& x);

/// Bottleneck activations for x; width is strictly below the input width.
Vector encode(const Mnn& mnn, const Vector& x);

/// Sum of squared errors between the reconstruction and the input itself.
double reconstruction_loss(const Mnn& mnn, const Vector& x);

bool is_mirrored(const Mnn& mnn, const Vector& x, double threshold);

/// Backprop gradients of reconstruction_loss at x.
Gradients analytic_gradient(const Mnn& mnn, const Vector& x);

/// Central-difference estimate of the same gradient; the independent oracle
/// for analytic_gradient. Touches the loss only through forward passes.
Gradients numeric_gradient(const Mnn& mnn, const Vector& x, double epsilon);

/// One gradient-descent update against the self-reconstruction loss. Returns
/// the updated network and the post-update input-output distance.
std::pair<Mnn, double> backprop_step(const Mnn& mnn, const Vector& x, double learning_rate);

/// Repeated full-ensemble presentations (order shuffled per epoch by rng) until
/// the mirrored fraction reaches config.success_fraction or config.max_epochs
/// is spent; the latter throws TrainingError carrying the final state.
std::pair<Mnn, MirrorReport> train_mirror(const Mnn& mnn, const std::vector<Vector>& data,
                                          const MnnConfig& config, Rng& rng);

}  // namespace tandem
