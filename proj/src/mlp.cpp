#include "vlcnet/mlp.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace vlcnet::nn {

namespace {

Eigen::MatrixXd apply_activation(const Eigen::MatrixXd& z, Activation act) {
  switch (act) {
    case Activation::Linear: return z;
    case Activation::Relu: return z.cwiseMax(0.0);
    case Activation::Tanh: return z.array().tanh().matrix();
    case Activation::Softmax: {
      Eigen::MatrixXd out(z.rows(), z.cols());
      for (Eigen::Index r = 0; r < z.rows(); ++r) {
        const double zmax = z.row(r).maxCoeff();
        Eigen::ArrayXd e = (z.row(r).array() - zmax).exp();
        out.row(r) = (e / e.sum()).matrix();
      }
      return out;
    }
  }
  throw std::logic_error("unknown activation");
}

// dL/dz given dL/dy and y = act(z)
Eigen::MatrixXd activation_backward(const Eigen::MatrixXd& upstream,
                                    const Eigen::MatrixXd& preact,
                                    const Eigen::MatrixXd& output, Activation act) {
  switch (act) {
    case Activation::Linear: return upstream;
    case Activation::Relu:
      return (preact.array() > 0.0).select(upstream, 0.0);
    case Activation::Tanh:
      return (upstream.array() * (1.0 - output.array().square())).matrix();
    case Activation::Softmax: {
      Eigen::MatrixXd dz(upstream.rows(), upstream.cols());
      for (Eigen::Index r = 0; r < upstream.rows(); ++r) {
        const double dot = upstream.row(r).dot(output.row(r));
        dz.row(r) = (output.row(r).array() * (upstream.row(r).array() - dot)).matrix();
      }
      return dz;
    }
  }
  throw std::logic_error("unknown activation");
}

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("truncated or corrupt network stream");
  return v;
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) write_pod(out, m(r, c));
}

void read_matrix(std::istream& in, Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = read_pod<double>(in);
}

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) write_pod(out, v(i));
}

void read_vector(std::istream& in, Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = read_pod<double>(in);
}

constexpr std::uint32_t kMlpVersion = 1;
constexpr std::uint32_t kAdamVersion = 1;

}  // namespace

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const Layer& l : layers)
    n += static_cast<std::size_t>(l.weights.size()) + static_cast<std::size_t>(l.bias.size());
  return n;
}

bool Mlp::same_architecture(const Mlp& other) const {
  if (layers.size() != other.layers.size()) return false;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].weights.rows() != other.layers[i].weights.rows() ||
        layers[i].weights.cols() != other.layers[i].weights.cols() ||
        layers[i].activation != other.layers[i].activation)
      return false;
  }
  return true;
}

Mlp init(const std::vector<int>& layer_sizes, const std::vector<Activation>& activations,
         Rng& rng) {
  if (layer_sizes.size() < 2) throw std::invalid_argument("need input and output sizes");
  if (activations.size() != layer_sizes.size() - 1)
    throw std::invalid_argument("one activation per layer expected");
  Mlp net;
  net.layers.resize(layer_sizes.size() - 1);
  for (std::size_t i = 0; i + 1 < layer_sizes.size(); ++i) {
    const int fan_in = layer_sizes[i];
    const int fan_out = layer_sizes[i + 1];
    if (fan_in < 1 || fan_out < 1) throw std::invalid_argument("layer sizes must be >= 1");
    Layer& l = net.layers[i];
    l.weights.resize(fan_in, fan_out);
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c)
        l.weights(r, c) = rng.uniform(-bound, bound);
    l.bias = Eigen::VectorXd::Zero(fan_out);
    l.activation = activations[i];
  }
  return net;
}

Eigen::MatrixXd forward(const Mlp& net, const Eigen::MatrixXd& x, Tape* tape) {
  if (net.layers.empty()) throw std::invalid_argument("empty network");
  if (x.cols() != net.input_dim())
    throw std::invalid_argument("input dimension mismatch");
  if (tape) {
    tape->inputs.clear();
    tape->preacts.clear();
    tape->consumed = false;
  }
  Eigen::MatrixXd h = x;
  for (const Layer& l : net.layers) {
    if (tape) tape->inputs.push_back(h);
    Eigen::MatrixXd z = (h * l.weights).rowwise() + l.bias.transpose();
    if (tape) tape->preacts.push_back(z);
    h = apply_activation(z, l.activation);
  }
  if (tape) tape->output = h;
  return h;
}

Eigen::MatrixXd forward_noisy_head(const Mlp& net, const Eigen::MatrixXd& x, double sigma,
                                   Rng& rng) {
  if (sigma == 0.0) return forward(net, x);
  Tape tape;
  forward(net, x, &tape);
  Eigen::MatrixXd z = tape.preacts.back();
  for (Eigen::Index r = 0; r < z.rows(); ++r)
    for (Eigen::Index c = 0; c < z.cols(); ++c) z(r, c) += sigma * rng.normal();
  return apply_activation(z, net.layers.back().activation);
}

Gradients backward(const Mlp& net, Tape& tape, const Eigen::MatrixXd& upstream,
                   bool want_param_grads) {
  if (tape.consumed) throw std::logic_error("tape already consumed");
  if (tape.inputs.size() != net.layers.size())
    throw std::invalid_argument("tape does not match network");
  if (upstream.rows() != tape.output.rows() || upstream.cols() != tape.output.cols())
    throw std::invalid_argument("upstream gradient shape mismatch");
  tape.consumed = true;

  Gradients g;
  if (want_param_grads) {
    g.weights.resize(net.layers.size());
    g.bias.resize(net.layers.size());
  }
  Eigen::MatrixXd delta = upstream;
  for (int i = static_cast<int>(net.layers.size()) - 1; i >= 0; --i) {
    const Layer& l = net.layers[static_cast<std::size_t>(i)];
    const Eigen::MatrixXd& y =
        (i + 1 < static_cast<int>(net.layers.size()))
            ? tape.inputs[static_cast<std::size_t>(i + 1)]
            : tape.output;
    Eigen::MatrixXd dz = activation_backward(delta, tape.preacts[static_cast<std::size_t>(i)],
                                             y, l.activation);
    if (want_param_grads) {
      g.weights[static_cast<std::size_t>(i)].noalias() =
          tape.inputs[static_cast<std::size_t>(i)].transpose() * dz;
      g.bias[static_cast<std::size_t>(i)] = dz.colwise().sum().transpose();
    }
    delta.noalias() = dz * l.weights.transpose();
  }
  g.input = std::move(delta);
  return g;
}

AdamState make_adam_state(const Mlp& net) {
  AdamState s;
  for (const Layer& l : net.layers) {
    s.m_weights.emplace_back(Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()));
    s.v_weights.emplace_back(Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()));
    s.m_bias.emplace_back(Eigen::VectorXd::Zero(l.bias.size()));
    s.v_bias.emplace_back(Eigen::VectorXd::Zero(l.bias.size()));
  }
  return s;
}

void adam_update(Mlp& net, const Gradients& grads, AdamState& state, double learning_rate) {
  if (grads.weights.size() != net.layers.size() ||
      state.m_weights.size() != net.layers.size())
    throw std::invalid_argument("gradient/state shape mismatch");
  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    Layer& l = net.layers[i];
    if (grads.weights[i].rows() != l.weights.rows() ||
        grads.weights[i].cols() != l.weights.cols())
      throw std::invalid_argument("gradient/state shape mismatch");
    auto step_block = [&](auto& param, const auto& grad, auto& m, auto& v) {
      m = state.beta1 * m + (1.0 - state.beta1) * grad;
      v = (state.beta2 * v.array() + (1.0 - state.beta2) * grad.array().square()).matrix();
      param.array() -=
          learning_rate * (m.array() / bc1) / ((v.array() / bc2).sqrt() + state.epsilon);
    };
    step_block(l.weights, grads.weights[i], state.m_weights[i], state.v_weights[i]);
    step_block(l.bias, grads.bias[i], state.m_bias[i], state.v_bias[i]);
  }
}

double clip_global_norm(Gradients& grads, double max_norm) {
  double sq = 0.0;
  for (const auto& w : grads.weights) sq += w.squaredNorm();
  for (const auto& b : grads.bias) sq += b.squaredNorm();
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (auto& w : grads.weights) w *= scale;
    for (auto& b : grads.bias) b *= scale;
  }
  return norm;
}

void soft_update(Mlp& target, const Mlp& source, double tau) {
  if (!target.same_architecture(source))
    throw std::invalid_argument("soft update across different architectures");
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must be in (0, 1]");
  for (std::size_t i = 0; i < target.layers.size(); ++i) {
    target.layers[i].weights =
        tau * source.layers[i].weights + (1.0 - tau) * target.layers[i].weights;
    target.layers[i].bias = tau * source.layers[i].bias + (1.0 - tau) * target.layers[i].bias;
  }
}

void serialize(const Mlp& net, std::ostream& out) {
  out.write("VMLP", 4);
  write_pod(out, kMlpVersion);
  write_pod(out, static_cast<std::uint32_t>(net.layers.size()));
  for (const Layer& l : net.layers) {
    write_pod(out, static_cast<std::uint32_t>(l.weights.rows()));
    write_pod(out, static_cast<std::uint32_t>(l.weights.cols()));
    write_pod(out, static_cast<std::uint8_t>(l.activation));
    write_matrix(out, l.weights);
    write_vector(out, l.bias);
  }
}

Mlp deserialize_mlp(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "VMLP")
    throw std::runtime_error("bad network magic (corrupt stream?)");
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kMlpVersion)
    throw std::runtime_error("unsupported network format version " + std::to_string(version));
  const auto n_layers = read_pod<std::uint32_t>(in);
  if (n_layers == 0 || n_layers > 1024) throw std::runtime_error("implausible layer count");
  Mlp net;
  net.layers.resize(n_layers);
  for (Layer& l : net.layers) {
    const auto rows = read_pod<std::uint32_t>(in);
    const auto cols = read_pod<std::uint32_t>(in);
    const auto act = read_pod<std::uint8_t>(in);
    if (rows == 0 || cols == 0 || rows > 1u << 20 || cols > 1u << 20)
      throw std::runtime_error("implausible layer shape");
    if (act > static_cast<std::uint8_t>(Activation::Softmax))
      throw std::runtime_error("unknown activation tag");
    l.weights.resize(rows, cols);
    l.bias.resize(cols);
    l.activation = static_cast<Activation>(act);
    read_matrix(in, l.weights);
    read_vector(in, l.bias);
  }
  return net;
}

void serialize(const AdamState& state, std::ostream& out) {
  out.write("VADM", 4);
  write_pod(out, kAdamVersion);
  write_pod(out, state.step);
  write_pod(out, state.beta1);
  write_pod(out, state.beta2);
  write_pod(out, state.epsilon);
  write_pod(out, static_cast<std::uint32_t>(state.m_weights.size()));
  for (std::size_t i = 0; i < state.m_weights.size(); ++i) {
    write_pod(out, static_cast<std::uint32_t>(state.m_weights[i].rows()));
    write_pod(out, static_cast<std::uint32_t>(state.m_weights[i].cols()));
    write_matrix(out, state.m_weights[i]);
    write_matrix(out, state.v_weights[i]);
    write_vector(out, state.m_bias[i]);
    write_vector(out, state.v_bias[i]);
  }
}

AdamState deserialize_adam(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "VADM")
    throw std::runtime_error("bad optimizer magic (corrupt stream?)");
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kAdamVersion)
    throw std::runtime_error("unsupported optimizer format version");
  AdamState s;
  s.step = read_pod<std::int64_t>(in);
  s.beta1 = read_pod<double>(in);
  s.beta2 = read_pod<double>(in);
  s.epsilon = read_pod<double>(in);
  const auto n = read_pod<std::uint32_t>(in);
  if (n > 1024) throw std::runtime_error("implausible layer count");
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto rows = read_pod<std::uint32_t>(in);
    const auto cols = read_pod<std::uint32_t>(in);
    if (rows == 0 || cols == 0 || rows > 1u << 20 || cols > 1u << 20)
      throw std::runtime_error("implausible moment shape");
    Eigen::MatrixXd m(rows, cols), v(rows, cols);
    read_matrix(in, m);
    read_matrix(in, v);
    Eigen::VectorXd mb(cols), vb(cols);
    read_vector(in, mb);
    read_vector(in, vb);
    s.m_weights.push_back(std::move(m));
    s.v_weights.push_back(std::move(v));
    s.m_bias.push_back(std::move(mb));
    s.v_bias.push_back(std::move(vb));
  }
  return s;
}

}  // namespace vlcnet::nn
