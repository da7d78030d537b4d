#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "vlcnet/rng.hpp"

namespace vlcnet::nn {

enum class Activation : std::uint8_t { Linear = 0, Relu = 1, Tanh = 2, Softmax = 3 };

struct Layer {
  Eigen::MatrixXd weights;  // fan_in x fan_out
  Eigen::VectorXd bias;     // fan_out
  Activation activation = Activation::Linear;
};

/// Dense feed-forward network over 64-bit floats. Rows of the in/out
/// matrices are samples, so a whole minibatch goes through as one GEMM
/// per layer.
struct Mlp {
  std::vector<Layer> layers;

  int input_dim() const { return layers.empty() ? 0 : static_cast<int>(layers.front().weights.rows()); }
  int output_dim() const { return layers.empty() ? 0 : static_cast<int>(layers.back().weights.cols()); }
  std::size_t parameter_count() const;
  bool same_architecture(const Mlp& other) const;
};

/// Weights uniform in +-1/sqrt(fan_in), biases zero.
Mlp init(const std::vector<int>& layer_sizes, const std::vector<Activation>& activations,
         Rng& rng);

/// Cached forward-pass state for one backward call.
struct Tape {
  std::vector<Eigen::MatrixXd> inputs;   // per layer, batch x fan_in
  std::vector<Eigen::MatrixXd> preacts;  // per layer, batch x fan_out
  Eigen::MatrixXd output;
  bool consumed = false;
};

Eigen::MatrixXd forward(const Mlp& net, const Eigen::MatrixXd& x, Tape* tape = nullptr);

/// Forward pass with Gaussian noise injected on the final pre-activation,
/// before the output head, so head constraints (simplex, bounds) still hold.
/// sigma = 0 reproduces forward() exactly and does not draw from the rng.
Eigen::MatrixXd forward_noisy_head(const Mlp& net, const Eigen::MatrixXd& x, double sigma,
                                   Rng& rng);

struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> bias;
  Eigen::MatrixXd input;  // batch x fan_in of the first layer
};

/// Exact reverse-mode gradients of sum(upstream .* output) wrt parameters
/// and input. The tape is consumed; reusing it throws. Pass
/// want_param_grads = false to get only the input gradient (cheaper).
Gradients backward(const Mlp& net, Tape& tape, const Eigen::MatrixXd& upstream,
                   bool want_param_grads = true);

struct AdamState {
  std::vector<Eigen::MatrixXd> m_weights, v_weights;
  std::vector<Eigen::VectorXd> m_bias, v_bias;
  std::int64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

AdamState make_adam_state(const Mlp& net);

/// One bias-corrected Adam step. Gradients are for a minimization problem.
void adam_update(Mlp& net, const Gradients& grads, AdamState& state, double learning_rate);

/// Scales gradients so their global L2 norm is at most max_norm
/// (max_norm <= 0 disables). Returns the pre-clip norm.
double clip_global_norm(Gradients& grads, double max_norm);

/// target <- tau * source + (1 - tau) * target, elementwise.
void soft_update(Mlp& target, const Mlp& source, double tau);

/// Versioned binary layout: "VMLP", u32 version, u32 layer count, then per
/// layer u32 rows, u32 cols, u8 activation, row-major 64-bit little-endian
/// weights, biases.
void serialize(const Mlp& net, std::ostream& out);
Mlp deserialize_mlp(std::istream& in);

/// "VADM", u32 version, moments in the owning network's layout plus the
/// step counter and hyperparameters.
void serialize(const AdamState& state, std::ostream& out);
AdamState deserialize_adam(std::istream& in);

}  // namespace vlcnet::nn
