#pragma once

// Small dense networks with reverse-mode gradients and an Adam optimizer.
//
// Parameters live in one flat vector. For every layer the weight matrix
// (fan_out x fan_in, row-major) comes first, followed by its bias vector.
// Optimizer state and gradients share this ordering.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace rwm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Activation { kRelu, kMish, kTanh, kIdentity };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& name);

struct NetworkSpec {
  std::vector<int> layer_sizes;
  Activation activation = Activation::kRelu;
  Activation output_activation = Activation::kIdentity;

  /// Throws std::invalid_argument for fewer than two layers, non-positive
  /// sizes, or an output activation other than identity/tanh.
  void validate() const;

  int input_size() const { return layer_sizes.front(); }
  int output_size() const { return layer_sizes.back(); }
  std::size_t num_layers() const { return layer_sizes.size() - 1; }
  std::size_t parameter_count() const;
};

class Network;

/// Record of one forward evaluation. Holds a pointer to the network that
/// produced it, so the network must outlive the tape and stay unmodified
/// while gradients are queried.
class Tape {
 public:
  const Vec& output() const { return activations_.back(); }
  const Vec& input() const { return activations_.front(); }

  /// Vector-Jacobian product with respect to the input.
  Vec grad_input(const Vec& cotangent) const;
  /// Vector-Jacobian product with respect to the flat parameter vector.
  Vec grad_params(const Vec& cotangent) const;
  /// Adds scale * grad_params(cotangent) into `accum` without allocating a
  /// second parameter-sized vector.
  void accumulate_grad_params(const Vec& cotangent, double scale, Vec& accum) const;

 private:
  friend class Network;
  explicit Tape(const Network* net) : net_(net) {}

  // Backpropagates to the pre-activation of every layer; the result is
  // indexed by layer.
  std::vector<Vec> backprop(const Vec& cotangent) const;

  const Network* net_;
  std::vector<Vec> pre_;          // pre-activation per layer
  std::vector<Vec> activations_;  // [0] is the input, back() the output
};

class Network {
 public:
  /// Weights ~ U(-sqrt(1/fan_in), +sqrt(1/fan_in)), biases zero.
  static Network init(const NetworkSpec& spec, std::uint64_t seed);

  Network(NetworkSpec spec, Vec parameters);

  const NetworkSpec& spec() const { return spec_; }
  const Vec& parameters() const { return params_; }
  std::size_t parameter_count() const { return static_cast<std::size_t>(params_.size()); }

  /// Replaces the parameter vector; size and finiteness are checked.
  void set_parameters(Vec parameters);

  Tape forward(const Vec& input) const;
  Vec operator()(const Vec& input) const { return forward(input).output(); }

  /// Offset of layer `l`'s weight block inside the flat parameter vector.
  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const;

  /// Sets the weights and bias of the last layer to zero.
  void zero_output_layer();

 private:
  friend class Tape;
  using RowMajorMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Eigen::Map<const RowMajorMat> weights(std::size_t layer) const;
  Eigen::Map<const Vec> bias(std::size_t layer) const;

  NetworkSpec spec_;
  Vec params_;
  std::vector<std::size_t> offsets_;
};

struct OptimizerState {
  Vec first_moment;
  Vec second_moment;
  long step_count = 0;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static OptimizerState for_network(const Network& net, double learning_rate);
};

/// One Adam update with bias correction. Throws std::invalid_argument on a
/// size mismatch or a non-finite gradient entry; in that case neither
/// argument is modified.
void adam_step(Network& net, OptimizerState& opt, const Vec& gradient);

// Checkpoints: {"format": "rwm-network", "version": 1, "spec": ..., "parameters": [...]}.
// Doubles are written in shortest round-trip form, so reload is exact.
nlohmann::json network_to_json(const Network& net);
Network network_from_json(const nlohmann::json& j);
void save_network(const Network& net, const std::filesystem::path& path);
Network load_network(const std::filesystem::path& path);

}  // namespace rwm
