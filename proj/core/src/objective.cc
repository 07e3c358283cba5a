// Copyright 2026 The mvrseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mvrseg/objective.h"

#include <cmath>
#include <map>

#include "mvrseg/distribution.h"
#include "mvrseg/text.h"

namespace mvrseg {

const char* LossModeName(LossMode mode) {
  switch (mode) {
    case LossMode::kBaseline:
      return "baseline";
    case LossMode::kSr:
      return "SR";
    case LossMode::kMvr:
      return "MVR";
  }
  return "?";
}

LossMode ParseLossMode(std::string_view name) {
  if (name == "baseline") return LossMode::kBaseline;
  if (name == "SR" || name == "sr") return LossMode::kSr;
  if (name == "MVR" || name == "mvr") return LossMode::kMvr;
  throw Error("unknown mode '" + std::string(name) + "' (expected baseline, SR or MVR)");
}

Ablation ParseAblation(std::string_view list) {
  Ablation a;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    std::string_view item =
        list.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (item == "det_ce") {
      a.det_ce = true;
    } else if (item == "prob_ce") {
      a.prob_ce = true;
    } else if (item == "consistency") {
      a.consistency = true;
    } else if (!item.empty()) {
      throw Error("unknown ablation '" + std::string(item) +
                  "' (expected det_ce, prob_ce or consistency)");
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return a;
}

void ObjectiveConfig::Validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw Error("lambda must be >= 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error("tau must be > 0");
  if (ablate.any() && mode != LossMode::kMvr) {
    throw Error("ablations are only valid in MVR mode");
  }
}

namespace {

std::size_t UnitLabel(const ExampleViews& views, const ToyModel& model,
                      const UnitActivation& unit) {
  const std::size_t index = model.task() == Task::kClassification ? 0 : unit.word;
  if (index >= views.labels.size()) throw Error("missing label for unit");
  const std::size_t y = views.labels[index];
  if (y >= model.num_classes()) throw Error("label out of range");
  return y;
}

// Cross-entropy of one unit; adds scale * d(CE)/d(logits) to `dlogits`.
double CrossEntropy(const std::vector<double>& logits, std::size_t label, double scale,
                    std::vector<double>* dlogits) {
  const std::vector<double> log_p = LogSoftmax(logits);
  if (dlogits) {
    for (std::size_t j = 0; j < logits.size(); ++j) {
      (*dlogits)[j] += scale * (std::exp(log_p[j]) - (j == label ? 1.0 : 0.0));
    }
  }
  return -log_p[label];
}

LossValue SingleViewLoss(const ToyModel& model, const ExampleViews& views,
                         const TokenSeq& tokens, const ObjectiveConfig& config,
                         Parameters* grad, bool det) {
  const std::vector<UnitActivation> units = ForwardUnits(model, tokens, config.max_pieces);
  const double inv = 1.0 / static_cast<double>(units.size());
  double ce = 0.0;
  for (const UnitActivation& u : units) {
    std::vector<double> dz(model.num_classes(), 0.0);
    ce += CrossEntropy(u.logits, UnitLabel(views, model, u), inv, grad ? &dz : nullptr);
    if (grad) BackwardUnit(model, u, dz, *grad);
  }
  LossValue v;
  v.units = units.size();
  v.total = ce * inv;
  (det ? v.ce_det : v.ce_prob) = v.total;
  return v;
}

LossValue MultiViewLoss(const ToyModel& model, const ExampleViews& views,
                        const ObjectiveConfig& config, Parameters* grad) {
  const std::vector<UnitActivation> det_units =
      ForwardUnits(model, views.det, config.max_pieces);
  const std::vector<UnitActivation> prob_units =
      ForwardUnits(model, views.prob, config.max_pieces);

  std::map<std::size_t, std::size_t> prob_by_word;
  for (std::size_t i = 0; i < prob_units.size(); ++i) prob_by_word[prob_units[i].word] = i;
  std::vector<std::pair<std::size_t, std::size_t>> shared;
  for (std::size_t i = 0; i < det_units.size(); ++i) {
    auto it = prob_by_word.find(det_units[i].word);
    if (it != prob_by_word.end()) shared.emplace_back(i, it->second);
  }
  LossValue v;
  if (shared.empty()) {
    v.skipped = true;
    return v;
  }

  const Ablation& ab = config.ablate;
  const double w_det = ab.det_ce ? 0.0 : (ab.prob_ce ? 1.0 : 0.5);
  const double w_prob = ab.prob_ce ? 0.0 : (ab.det_ce ? 1.0 : 0.5);
  const double lambda = ab.consistency ? 0.0 : config.lambda;
  const double tau = config.tau;
  const double tau_q = config.flatten_target == FlattenTarget::kBoth ? tau : 1.0;
  const double inv = 1.0 / static_cast<double>(shared.size());
  const std::size_t c = model.num_classes();

  for (const auto& [di, pi] : shared) {
    const UnitActivation& ud = det_units[di];
    const UnitActivation& up = prob_units[pi];
    const std::size_t y = UnitLabel(views, model, ud);
    std::vector<double> dzd(c, 0.0);
    std::vector<double> dzp(c, 0.0);
    v.ce_det += CrossEntropy(ud.logits, y, w_det * inv, grad ? &dzd : nullptr);
    v.ce_prob += CrossEntropy(up.logits, y, w_prob * inv, grad ? &dzp : nullptr);

    const std::vector<double> p = Flatten(ud.logits, tau);
    const std::vector<double> q = Flatten(up.logits, tau_q);
    v.kl += KlDivergence(p, q);

    if (grad && lambda != 0.0) {
      const double scale = lambda * inv;
      // g_i = ln p_i - ln max(q_i, eps); terms with p_i = 0 vanish.
      double mean_g = 0.0;
      std::vector<double> g(c, 0.0);
      double unclamped_mass = 0.0;
      for (std::size_t i = 0; i < c; ++i) {
        const bool clamped = q[i] < kKlEpsilon;
        if (!clamped) unclamped_mass += p[i];
        if (p[i] > 0.0) {
          g[i] = std::log(p[i]) - std::log(std::max(q[i], kKlEpsilon));
          mean_g += p[i] * g[i];
        }
      }
      for (std::size_t j = 0; j < c; ++j) {
        if (config.kl_target_grad) dzd[j] += scale * p[j] * (g[j] - mean_g) / tau;
        const double own = q[j] < kKlEpsilon ? 0.0 : p[j];
        dzp[j] += scale * (q[j] * unclamped_mass - own) / tau_q;
      }
    }
    if (grad) {
      BackwardUnit(model, ud, dzd, *grad);
      BackwardUnit(model, up, dzp, *grad);
    }
  }
  v.units = shared.size();
  v.ce_det *= inv;
  v.ce_prob *= inv;
  v.kl *= inv;
  v.total = w_det * v.ce_det + w_prob * v.ce_prob + lambda * v.kl;
  return v;
}

}  // namespace

LossValue ComputeLoss(const ToyModel& model, const ExampleViews& views,
                      const ObjectiveConfig& config, Parameters* grad) {
  config.Validate();
  switch (config.mode) {
    case LossMode::kBaseline:
      return SingleViewLoss(model, views, views.det, config, grad, /*det=*/true);
    case LossMode::kSr:
      return SingleViewLoss(model, views, views.prob, config, grad, /*det=*/false);
    case LossMode::kMvr:
      return MultiViewLoss(model, views, config, grad);
  }
  throw Error("unknown loss mode");
}

LossValue MvrLoss(const ToyModel& model, const ExampleViews& views,
                  const ObjectiveConfig& config, Parameters* grad) {
  ObjectiveConfig c = config;
  c.mode = LossMode::kMvr;
  return ComputeLoss(model, views, c, grad);
}

LossValue SrLoss(const ToyModel& model, const ExampleViews& views,
                 const ObjectiveConfig& config, Parameters* grad) {
  ObjectiveConfig c = config;
  c.mode = LossMode::kSr;
  c.ablate = {};
  return ComputeLoss(model, views, c, grad);
}

LossValue BaselineLoss(const ToyModel& model, const ExampleViews& views,
                       const ObjectiveConfig& config, Parameters* grad) {
  ObjectiveConfig c = config;
  c.mode = LossMode::kBaseline;
  c.ablate = {};
  return ComputeLoss(model, views, c, grad);
}

}  // namespace mvrseg
