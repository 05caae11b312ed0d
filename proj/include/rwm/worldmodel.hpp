#pragma once

// Forward model F(z, a0) -> z', the replay buffer it is trained from, and
// the shared prediction loss |z_hat - z|^2.

#include <cstdint>
#include <deque>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rwm/baseline.hpp"
#include "rwm/diffnet.hpp"

namespace rwm {

/// Observations are used as latent states verbatim.
inline Vec encode(const Vec& observation) { return observation; }

struct TransitionRecord {
  Vec z;
  Vec a0;
  Vec ac;
  Vec a_eff;
  Vec z_next;
  Vec z_pred;  // empty when no prediction was made
  double reward = 0.0;
  long t = 0;
  Vec p;
};

class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  /// Appends a record, dropping the oldest one when full. Throws on
  /// non-finite entries or dimensions that differ from earlier records.
  void push(TransitionRecord record);

  std::size_t size() const { return records_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return records_.empty(); }
  const TransitionRecord& operator[](std::size_t i) const { return records_[i]; }
  const std::deque<TransitionRecord>& records() const { return records_; }

  /// One row per record: t,reward,z_*,a0_*,ac_*,a_eff_*,z_next_*,z_pred_*,p_*.
  /// Missing predictions are written as empty cells.
  std::string to_csv() const;
  static ReplayBuffer from_csv(const std::string& text, std::size_t capacity);

 private:
  std::size_t capacity_;
  std::deque<TransitionRecord> records_;
};

/// Per-coordinate affine map x -> (x - shift) / scale.
struct Normalizer {
  Vec shift;
  Vec scale;

  static Normalizer identity(int dim);
  /// Mean and standard deviation of the columns of `samples` (one sample per
  /// column); scales below `floor` are replaced by one.
  static Normalizer fit(const Mat& samples, double floor = 1e-8);
};

struct ForwardModelSpec {
  std::vector<int> hidden{64, 64};
  Activation activation = Activation::kMish;
  /// Predict z' - z instead of z'.
  bool residual = false;
  /// Standardize network inputs and targets using the training data.
  bool normalize = false;
};

/// F(z, a) = [residual ? z : 0] + out.shift + out.scale * net((concat(z, a) - in.shift) / in.scale).
class ForwardModel {
 public:
  ForwardModel(Network network, int latent_dim, int action_dim, bool residual = false,
               std::optional<Normalizer> input = std::nullopt, std::optional<Normalizer> output = std::nullopt);

  static ForwardModel init(int latent_dim, int action_dim, const ForwardModelSpec& spec, std::uint64_t seed);
  /// Single identity layer with weights [A B]: F(z, a) = A z + B a exactly.
  static ForwardModel exact_linear(const Mat& A, const Mat& B);

  int latent_dim() const { return latent_dim_; }
  int action_dim() const { return action_dim_; }
  bool residual() const { return residual_; }
  const Network& network() const { return network_; }
  Network& mutable_network() { return network_; }
  const Normalizer& input_normalizer() const { return input_; }
  const Normalizer& output_normalizer() const { return output_; }
  void set_normalizers(Normalizer input, Normalizer output);

  /// A forward evaluation that can answer vector-Jacobian products. It keeps
  /// a pointer to this model, so the model must outlive it.
  class Evaluation {
   public:
    const Vec& prediction() const { return prediction_; }
    /// cotangent^T dF/d(z, a), length latent_dim + action_dim.
    Vec vjp(const Vec& cotangent) const;
    Vec vjp_latent(const Vec& cotangent) const;
    Vec vjp_action(const Vec& cotangent) const;
    /// Gradient of <cotangent, F> with respect to the network parameters.
    Vec vjp_params(const Vec& cotangent) const;

   private:
    friend class ForwardModel;
    Evaluation(const ForwardModel* model, Tape tape, Vec prediction)
        : model_(model), tape_(std::move(tape)), prediction_(std::move(prediction)) {}
    const ForwardModel* model_;
    Tape tape_;
    Vec prediction_;
  };

  Evaluation evaluate(const Vec& z, const Vec& a) const;
  Vec predict(const Vec& z, const Vec& a0) const { return evaluate(z, a0).prediction(); }

  /// dF/da at (z, a), latent_dim x action_dim, assembled row by row from VJPs.
  Mat action_jacobian(const Vec& z, const Vec& a) const;

 private:
  Network network_;
  int latent_dim_;
  int action_dim_;
  bool residual_;
  Normalizer input_;
  Normalizer output_;
};

inline Vec predict(const ForwardModel& F, const Vec& z, const Vec& a0) { return F.predict(z, a0); }

/// |z_pred - z_next|^2 (sum of squared components).
double prediction_loss(const Vec& z_pred, const Vec& z_next);

struct ForwardTrainParams {
  int epochs = 30;
  int batch_size = 64;
  double learning_rate = 1e-3;
  /// Learning rate after the last epoch; decays geometrically from
  /// learning_rate. Equal to learning_rate by default (no decay).
  std::optional<double> final_learning_rate;
  double validation_fraction = 0.1;
  /// Train on a0 + ac instead of a0.
  bool condition_on_total = false;
};

struct ForwardTrainReport {
  std::vector<double> train_mse;       // mean over samples of prediction_loss, per epoch
  std::vector<double> validation_mse;  // same on the held-out tail
  std::size_t train_size = 0;
  std::size_t validation_size = 0;
};

/// Minibatch Adam on prediction_loss. The last validation_fraction of the
/// buffer is held out and never trained on. With spec.normalize the
/// normalizers are fitted to the training portion first. Throws on an empty
/// buffer or a non-finite loss.
ForwardModel train_forward_model(const ReplayBuffer& buffer, const ForwardModelSpec& spec,
                                 const ForwardTrainParams& params, std::uint64_t seed,
                                 ForwardTrainReport* report = nullptr);

/// Open-loop references z_hat_{i+1} = F(z_hat_i, pi0(z_hat_i)), i = 0..k-1,
/// starting from z_hat_0 = z.
std::vector<Vec> rollout_reference(const ForwardModel& F, const Vec& z, const BaselinePolicy& policy, int k);

nlohmann::json forward_model_to_json(const ForwardModel& F);
ForwardModel forward_model_from_json(const nlohmann::json& j);

}  // namespace rwm
