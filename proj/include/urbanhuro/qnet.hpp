#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "urbanhuro/actions.hpp"
#include "urbanhuro/encoding.hpp"
#include "urbanhuro/grid.hpp"
#include "urbanhuro/rng.hpp"

namespace urbanhuro {

struct QNetConfig {
  int input_dim = 0;
  std::vector<int> hidden = {64, 64};
  int n_actions = kNumActions;
  uint64_t init_seed = 1;
  int target_sync_every = 200;  // steps between target-network copies
};

// Feed-forward action-value approximator: tanh hidden layers, linear output,
// trained with one-step TD against a periodically synced target copy.
class QFunction {
 public:
  explicit QFunction(const QNetConfig& cfg);

  const QNetConfig& config() const { return cfg_; }
  int parameter_count() const { return static_cast<int>(theta_.size()); }

  // Action values under the online parameters. Throws DomainError on a
  // length mismatch.
  std::vector<double> forward(std::span<const double> input) const;
  std::vector<double> forward_target(std::span<const double> input) const;

  // Mean squared error between Q(s_i)[a_i] and target_i, plus its gradient
  // with respect to the online parameters.
  double loss_and_gradient(const std::vector<std::span<const double>>& inputs,
                           const std::vector<int>& actions,
                           const std::vector<double>& targets,
                           std::vector<double>& grad_out) const;

  void adam_step(const std::vector<double>& grad, double lr);
  void sync_target() { target_ = theta_; }
  int step_count() const { return step_; }

  std::vector<double>& parameters() { return theta_; }
  const std::vector<double>& parameters() const { return theta_; }
  const std::vector<double>& target_parameters() const { return target_; }
  void set_parameters(const std::vector<double>& theta);
  void set_target_parameters(const std::vector<double>& target);
  void set_step_count(int step) { step_ = step; }
  void zero_parameters();

  std::string to_json() const;                      // versioned checkpoint
  static QFunction from_json(const std::string&);   // bit-exact round-trip

 private:
  friend double td_update(QFunction&, const std::vector<const struct Transition*>&,
                          double, double);
  std::vector<double> run(const std::vector<double>& params,
                          std::span<const double> input) const;

  QNetConfig cfg_;
  std::vector<int> layer_sizes_;
  std::vector<double> theta_;
  std::vector<double> target_;
  std::vector<double> adam_m_;
  std::vector<double> adam_v_;
  int adam_t_ = 0;
  int step_ = 0;
};

struct Transition {
  std::vector<double> state;
  int action = 0;
  double reward = 0.0;
  std::vector<double> next_state;
  bool terminal = false;
};

// Uniform ring buffer; batches are drawn without replacement.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(size_t capacity);
  void push(Transition t);
  size_t size() const { return store_.size(); }
  size_t capacity() const { return capacity_; }
  std::vector<const Transition*> sample(size_t batch, Rng& rng) const;

 private:
  size_t capacity_;
  size_t next_ = 0;
  std::vector<Transition> store_;
};

// One Adam step on the batch TD error against the target network
// (y = r + gamma * max_a' Q_target(s', a'), or y = r on terminal
// transitions). Returns the pre-step loss; the target copy refreshes every
// cfg.target_sync_every steps. Throws TrainingError on a non-finite loss.
double td_update(QFunction& q, const std::vector<const Transition*>& batch,
                 double gamma, double lr);

// Epsilon-greedy routing action: with probability explore_eps a uniformly
// random feasible action, otherwise the feasible argmax of the action
// values (ties to the lowest index). explore_eps = 0 is the evaluation-time
// greedy rule.
int select_action(const QFunction& q, const AgentStateVector& s,
                  const GridMap& map, RegionId g, double explore_eps, Rng& rng);

}  // namespace urbanhuro
