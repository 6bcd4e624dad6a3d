#include "urbanhuro/qnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "urbanhuro/errors.hpp"

namespace urbanhuro {

namespace {

size_t param_count(const std::vector<int>& sizes) {
  size_t n = 0;
  for (size_t l = 0; l + 1 < sizes.size(); ++l)
    n += static_cast<size_t>(sizes[l + 1]) * sizes[l] + sizes[l + 1];
  return n;
}

}  // namespace

QFunction::QFunction(const QNetConfig& cfg) : cfg_(cfg) {
  if (cfg.input_dim < 1) throw ConfigError("QNetConfig.input_dim must be >= 1");
  if (cfg.n_actions < 1) throw ConfigError("QNetConfig.n_actions must be >= 1");
  layer_sizes_.push_back(cfg.input_dim);
  for (const int h : cfg.hidden) {
    if (h < 1) throw ConfigError("QNetConfig.hidden widths must be >= 1");
    layer_sizes_.push_back(h);
  }
  layer_sizes_.push_back(cfg.n_actions);

  theta_.resize(param_count(layer_sizes_));
  Rng rng(cfg.init_seed);
  size_t off = 0;
  for (size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
    const int fan_in = layer_sizes_[l], fan_out = layer_sizes_[l + 1];
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    for (int k = 0; k < fan_out * fan_in; ++k)
      theta_[off++] = rng.uniform(-bound, bound);
    for (int k = 0; k < fan_out; ++k) theta_[off++] = 0.0;
  }
  target_ = theta_;
  adam_m_.assign(theta_.size(), 0.0);
  adam_v_.assign(theta_.size(), 0.0);
}

void QFunction::set_parameters(const std::vector<double>& theta) {
  if (theta.size() != theta_.size())
    throw DomainError("parameter vector size mismatch");
  theta_ = theta;
}

void QFunction::set_target_parameters(const std::vector<double>& target) {
  if (target.size() != target_.size())
    throw DomainError("target parameter vector size mismatch");
  target_ = target;
}

void QFunction::zero_parameters() {
  std::fill(theta_.begin(), theta_.end(), 0.0);
  std::fill(target_.begin(), target_.end(), 0.0);
}

std::vector<double> QFunction::run(const std::vector<double>& params,
                                   std::span<const double> input) const {
  if (static_cast<int>(input.size()) != cfg_.input_dim)
    throw DomainError("state vector length mismatch: got " +
                      std::to_string(input.size()) + ", expected " +
                      std::to_string(cfg_.input_dim));
  std::vector<double> act(input.begin(), input.end());
  size_t off = 0;
  for (size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
    const int in = layer_sizes_[l], out = layer_sizes_[l + 1];
    std::vector<double> next(static_cast<size_t>(out));
    const double* w = params.data() + off;
    const double* b = params.data() + off + static_cast<size_t>(out) * in;
    for (int j = 0; j < out; ++j) {
      double z = b[j];
      const double* wj = w + static_cast<size_t>(j) * in;
      for (int i = 0; i < in; ++i) z += wj[i] * act[static_cast<size_t>(i)];
      next[static_cast<size_t>(j)] = (l + 2 < layer_sizes_.size()) ? std::tanh(z) : z;
    }
    act = std::move(next);
    off += static_cast<size_t>(out) * in + out;
  }
  return act;
}

std::vector<double> QFunction::forward(std::span<const double> input) const {
  return run(theta_, input);
}

std::vector<double> QFunction::forward_target(std::span<const double> input) const {
  return run(target_, input);
}

double QFunction::loss_and_gradient(
    const std::vector<std::span<const double>>& inputs,
    const std::vector<int>& actions, const std::vector<double>& targets,
    std::vector<double>& grad_out) const {
  const size_t batch = inputs.size();
  if (batch == 0 || actions.size() != batch || targets.size() != batch)
    throw DomainError("loss_and_gradient: inconsistent batch");
  grad_out.assign(theta_.size(), 0.0);

  const size_t n_layers = layer_sizes_.size() - 1;
  std::vector<size_t> offsets(n_layers);
  {
    size_t off = 0;
    for (size_t l = 0; l < n_layers; ++l) {
      offsets[l] = off;
      off += static_cast<size_t>(layer_sizes_[l + 1]) * layer_sizes_[l] + layer_sizes_[l + 1];
    }
  }

  double loss = 0.0;
  std::vector<std::vector<double>> acts(n_layers + 1);
  for (size_t n = 0; n < batch; ++n) {
    // Forward pass, keeping activations.
    acts[0].assign(inputs[n].begin(), inputs[n].end());
    if (static_cast<int>(acts[0].size()) != cfg_.input_dim)
      throw DomainError("state vector length mismatch in batch");
    for (size_t l = 0; l < n_layers; ++l) {
      const int in = layer_sizes_[l], out = layer_sizes_[l + 1];
      acts[l + 1].assign(static_cast<size_t>(out), 0.0);
      const double* w = theta_.data() + offsets[l];
      const double* b = theta_.data() + offsets[l] + static_cast<size_t>(out) * in;
      for (int j = 0; j < out; ++j) {
        double z = b[j];
        const double* wj = w + static_cast<size_t>(j) * in;
        for (int i = 0; i < in; ++i) z += wj[i] * acts[l][static_cast<size_t>(i)];
        acts[l + 1][static_cast<size_t>(j)] = (l + 1 < n_layers) ? std::tanh(z) : z;
      }
    }

    const int a = actions[n];
    if (a < 0 || a >= cfg_.n_actions) throw DomainError("action index out of range");
    const double err = acts[n_layers][static_cast<size_t>(a)] - targets[n];
    loss += err * err;

    // Backward pass: d(loss_n)/d(output) is zero except at the chosen action.
    std::vector<double> delta(static_cast<size_t>(cfg_.n_actions), 0.0);
    delta[static_cast<size_t>(a)] = 2.0 * err / static_cast<double>(batch);
    for (size_t l = n_layers; l-- > 0;) {
      const int in = layer_sizes_[l], out = layer_sizes_[l + 1];
      double* gw = grad_out.data() + offsets[l];
      double* gb = grad_out.data() + offsets[l] + static_cast<size_t>(out) * in;
      const double* w = theta_.data() + offsets[l];
      std::vector<double> prev_delta(static_cast<size_t>(in), 0.0);
      for (int j = 0; j < out; ++j) {
        const double dj = delta[static_cast<size_t>(j)];
        if (dj == 0.0) continue;
        gb[j] += dj;
        double* gwj = gw + static_cast<size_t>(j) * in;
        const double* wj = w + static_cast<size_t>(j) * in;
        for (int i = 0; i < in; ++i) {
          gwj[i] += dj * acts[l][static_cast<size_t>(i)];
          prev_delta[static_cast<size_t>(i)] += dj * wj[i];
        }
      }
      if (l > 0) {
        // tanh'(z) = 1 - tanh(z)^2, and acts holds tanh(z).
        for (int i = 0; i < in; ++i) {
          const double h = acts[l][static_cast<size_t>(i)];
          prev_delta[static_cast<size_t>(i)] *= 1.0 - h * h;
        }
      }
      delta = std::move(prev_delta);
    }
  }
  return loss / static_cast<double>(batch);
}

void QFunction::adam_step(const std::vector<double>& grad, double lr) {
  if (grad.size() != theta_.size()) throw DomainError("gradient size mismatch");
  constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
  ++adam_t_;
  const double c1 = 1.0 - std::pow(b1, adam_t_);
  const double c2 = 1.0 - std::pow(b2, adam_t_);
  for (size_t i = 0; i < theta_.size(); ++i) {
    adam_m_[i] = b1 * adam_m_[i] + (1.0 - b1) * grad[i];
    adam_v_[i] = b2 * adam_v_[i] + (1.0 - b2) * grad[i] * grad[i];
    theta_[i] -= lr * (adam_m_[i] / c1) / (std::sqrt(adam_v_[i] / c2) + eps);
  }
}

std::string QFunction::to_json() const {
  nlohmann::json j;
  j["version"] = 1;
  j["input_dim"] = cfg_.input_dim;
  j["hidden"] = cfg_.hidden;
  j["n_actions"] = cfg_.n_actions;
  j["target_sync_every"] = cfg_.target_sync_every;
  j["theta"] = theta_;
  j["target"] = target_;
  j["step"] = step_;
  return j.dump();
}

QFunction QFunction::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.contains("version") || j["version"].get<int>() != 1)
    throw ConfigError("unsupported checkpoint version");
  QNetConfig cfg;
  cfg.input_dim = j["input_dim"].get<int>();
  cfg.hidden = j["hidden"].get<std::vector<int>>();
  cfg.n_actions = j["n_actions"].get<int>();
  cfg.target_sync_every = j["target_sync_every"].get<int>();
  QFunction q(cfg);
  q.set_parameters(j["theta"].get<std::vector<double>>());
  q.set_target_parameters(j["target"].get<std::vector<double>>());
  q.step_ = j["step"].get<int>();
  return q;
}

ReplayBuffer::ReplayBuffer(size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("replay capacity must be >= 1");
  store_.reserve(std::min<size_t>(capacity, 1 << 16));
}

void ReplayBuffer::push(Transition t) {
  if (store_.size() < capacity_) {
    store_.push_back(std::move(t));
  } else {
    store_[next_] = std::move(t);
  }
  next_ = (next_ + 1) % capacity_;
}

std::vector<const Transition*> ReplayBuffer::sample(size_t batch, Rng& rng) const {
  const size_t n = store_.size();
  const size_t k = std::min(batch, n);
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<const Transition*> out;
  out.reserve(k);
  for (size_t i = 0; i < k; ++i) {  // partial Fisher-Yates
    const size_t j = i + rng.uniform_index(n - i);
    std::swap(idx[i], idx[j]);
    out.push_back(&store_[idx[i]]);
  }
  return out;
}

double td_update(QFunction& q, const std::vector<const Transition*>& batch,
                 double gamma, double lr) {
  if (batch.empty()) throw DomainError("td_update: empty batch");
  std::vector<std::span<const double>> inputs;
  std::vector<int> actions;
  std::vector<double> targets;
  inputs.reserve(batch.size());
  actions.reserve(batch.size());
  targets.reserve(batch.size());
  for (const Transition* tr : batch) {
    inputs.emplace_back(tr->state);
    actions.push_back(tr->action);
    double y = tr->reward;
    if (!tr->terminal) {
      const auto qs = q.forward_target(tr->next_state);
      y += gamma * *std::max_element(qs.begin(), qs.end());
    }
    targets.push_back(y);
  }

  std::vector<double> grad;
  const double loss = q.loss_and_gradient(inputs, actions, targets, grad);
  if (!std::isfinite(loss)) {
    double pmax = 0.0;
    for (const double p : q.parameters()) pmax = std::max(pmax, std::abs(p));
    throw TrainingError("non-finite TD loss (batch " + std::to_string(batch.size()) +
                        ", step " + std::to_string(q.step_count()) +
                        ", max |theta| " + std::to_string(pmax) + ")");
  }
  q.adam_step(grad, lr);
  q.step_ = q.step_count() + 1;
  if (q.config().target_sync_every > 0 &&
      q.step_count() % q.config().target_sync_every == 0)
    q.sync_target();
  return loss;
}

int select_action(const QFunction& q, const AgentStateVector& s,
                  const GridMap& map, RegionId g, double explore_eps, Rng& rng) {
  if (!map.valid(g)) throw DomainError("select_action: invalid region");
  const auto mask = feasible_actions(map, g);
  std::vector<int> feasible;
  feasible.reserve(kNumActions);
  for (int a = 0; a < kNumActions; ++a)
    if (mask[static_cast<size_t>(a)]) feasible.push_back(a);
  if (feasible.empty()) return kHoldAction;

  if (explore_eps > 0.0 && rng.uniform01() < explore_eps)
    return feasible[rng.uniform_index(feasible.size())];

  const auto values = q.forward(s.v);
  int best = feasible.front();
  for (const int a : feasible)
    if (values[static_cast<size_t>(a)] > values[static_cast<size_t>(best)]) best = a;
  return best;
}

}  // namespace urbanhuro
