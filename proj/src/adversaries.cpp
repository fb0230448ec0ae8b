#include "olt/adversaries.hpp"

#include <stdexcept>

namespace olt {

std::vector<ManipulationRequest<uint8_t>> BitFlipper::on_batch(
    const std::vector<QueryRecord<uint8_t>>&, const AdversaryView<uint8_t>& view) {
  std::vector<ManipulationRequest<uint8_t>> reqs;
  for (int64_t i = 0; i < view.remaining_budget; ++i) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      uint64_t p = rng_.below(view.domain_size);
      if (view.is_queried(p)) continue;
      uint8_t flipped = static_cast<uint8_t>(1 - base_->eval(p));
      reqs.push_back({ManipulationKind::kCorruption, p, flipped});
      break;
    }
  }
  return reqs;
}

std::vector<ManipulationRequest<uint8_t>> GreedyXorEraser::on_batch(
    const std::vector<QueryRecord<uint8_t>>& batch, const AdversaryView<uint8_t>& view) {
  for (const auto& rec : batch) {
    recent_.push_back(rec.point);
    if (recent_.size() > window_) recent_.pop_front();
  }
  std::vector<ManipulationRequest<uint8_t>> reqs;
  for (int64_t i = 0; i < view.remaining_budget; ++i) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      uint64_t target = 0;
      bool nonempty = false;
      for (uint64_t q : recent_) {
        if (rng_.bit()) {
          target ^= q;
          nonempty = true;
        }
      }
      if (!nonempty) continue;
      if (view.is_queried(target) || view.is_erased(target)) continue;
      reqs.push_back({ManipulationKind::kErasure, target, 0});
      break;
    }
  }
  return reqs;
}

SpanEraser::SpanEraser(const SpanEraserConfig& cfg, uint64_t seed)
    : cfg_(cfg),
      indexer_(cfg.n, cfg.d),
      tracker_(indexer_.count(), cfg.n, cfg.span_cap),
      rng_(seed) {
  uint64_t words = ((uint64_t{1} << cfg_.n) + 63) / 64;
  seen_bits_.assign(words, 0);
  inserted_bits_.assign(words, 0);
}

void SpanEraser::note_projection(uint64_t p, const AdversaryView<uint8_t>& view) {
  uint64_t mask = uint64_t{1} << (p & 63);
  if (seen_bits_[p >> 6] & mask) return;
  seen_bits_[p >> 6] |= mask;
  ++z_size_;
  if (!view.is_queried(p) && !view.is_erased(p)) pending_.push_back(p);
}

std::vector<ManipulationRequest<uint8_t>> SpanEraser::on_batch(
    const std::vector<QueryRecord<uint8_t>>& batch, const AdversaryView<uint8_t>& view) {
  for (const auto& rec : batch) {
    if (!rec.answer.has_value()) continue;  // only answered queries feed the span
    uint64_t mask = uint64_t{1} << (rec.point & 63);
    if (inserted_bits_[rec.point >> 6] & mask) continue;
    inserted_bits_[rec.point >> 6] |= mask;
    ++answered_count_;
    const std::vector<uint64_t>& fresh = tracker_.insert(ext(rec.point, indexer_).coords);
    for (uint64_t p : fresh) note_projection(p, view);
  }
  std::vector<ManipulationRequest<uint8_t>> reqs;
  int64_t budget = view.remaining_budget;
  while (budget > 0 && !pending_.empty()) {
    uint64_t p = pending_.front();
    pending_.pop_front();
    if (view.is_queried(p) || view.is_erased(p)) continue;
    reqs.push_back({ManipulationKind::kErasure, p, 0});
    --budget;
  }
  if (tracker_.overflowed()) {
    // Z outgrew the enumeration cap: fall back to erasing uniform samples of
    // the span's projection set.
    while (budget > 0) {
      bool found = false;
      for (int attempt = 0; attempt < 16; ++attempt) {
        uint64_t p = tracker_.sample_projection(rng_);
        if (view.is_queried(p) || view.is_erased(p)) continue;
        bool dup = false;
        for (const auto& r : reqs) dup |= r.point == p;
        if (dup) continue;
        reqs.push_back({ManipulationKind::kErasure, p, 0});
        found = true;
        break;
      }
      if (!found) break;
      --budget;
    }
  }
  return reqs;
}

PairedSequenceInstance PairedSequenceInstance::sample_plus(uint64_t n, double eps, Rng& rng) {
  if (n % 2 != 0) throw std::invalid_argument("paired instance: n must be even");
  if (eps < 0 || eps > 1.0 / 3.0) throw std::invalid_argument("paired instance: eps in [0, 1/3]");
  PairedSequenceInstance inst(n, eps, PairDistribution::kPlus);
  inst.types_.resize(n / 2);
  for (auto& t : inst.types_) {
    double u = rng.unit();
    t = u < eps ? PairKind::kLow : (u < 2 * eps ? PairKind::kHigh : PairKind::kIncreasing);
  }
  return inst;
}

PairedSequenceInstance PairedSequenceInstance::sample_minus(uint64_t n, double eps, Rng& rng) {
  if (n % 2 != 0) throw std::invalid_argument("paired instance: n must be even");
  if (eps < 0 || eps > 1.0 / 3.0) throw std::invalid_argument("paired instance: eps in [0, 1/3]");
  PairedSequenceInstance inst(n, eps, PairDistribution::kMinus);
  inst.types_.resize(n / 2);
  for (auto& t : inst.types_) {
    t = rng.unit() < eps ? PairKind::kViolating : PairKind::kIncreasing;
  }
  return inst;
}

PairedSequenceInstance PairedSequenceInstance::all_increasing(uint64_t n, double eps) {
  if (n % 2 != 0) throw std::invalid_argument("paired instance: n must be even");
  return PairedSequenceInstance(n, eps, PairDistribution::kPlus);
}

double PairedSequenceInstance::value(uint64_t pos) const {
  uint64_t i = (pos + 1) / 2;
  double lo = static_cast<double>(2 * i - 1);
  double hi = static_cast<double>(2 * i);
  switch (pair_type(i)) {
    case PairKind::kIncreasing:
      return pos % 2 == 1 ? lo : hi;
    case PairKind::kLow:
      return lo;
    case PairKind::kHigh:
      return hi;
    case PairKind::kViolating:
      return pos % 2 == 1 ? hi : lo;
  }
  return 0;
}

RealSequence PairedSequenceInstance::materialize() const {
  std::vector<double> vals(n_);
  for (uint64_t pos = 1; pos <= n_; ++pos) vals[pos - 1] = value(pos);
  return RealSequence(std::move(vals));
}

std::vector<ManipulationRequest<double>> SortednessAdversary::on_batch(
    const std::vector<QueryRecord<double>>& batch, const AdversaryView<double>& view) {
  double eps = instance_->eps();
  bool stochastic_increasing = instance_->source() == PairDistribution::kMinus;
  for (const auto& rec : batch) {
    // Oracle points are 0-based; the pairing couples (0,1), (2,3), ...
    uint64_t partner = rec.point ^ 1;
    if (partner >= view.domain_size) continue;
    if (view.is_queried(partner) || view.is_erased(partner)) continue;
    // One decision per pair: skip if the partner is already pending.
    bool queued = false;
    for (uint64_t p : pending_) queued |= p == partner;
    if (queued) continue;
    PairKind kind = instance_->pair_type(rec.point / 2 + 1);
    bool erase;
    if (kind == PairKind::kIncreasing) {
      erase = stochastic_increasing && eps < 1.0 && rng_.bernoulli(eps / (1.0 - eps));
    } else {
      erase = true;
    }
    if (erase) {
      pending_.push_back(partner);
      ++requested_;
    }
  }
  std::vector<ManipulationRequest<double>> reqs;
  int64_t budget = view.remaining_budget;
  while (budget > 0 && !pending_.empty()) {
    uint64_t p = pending_.front();
    pending_.pop_front();
    if (view.is_erased(p)) continue;
    reqs.push_back({ManipulationKind::kErasure, p, 0});
    --budget;
  }
  if (!pending_.empty()) ever_deferred_ = true;
  return reqs;
}

std::vector<ManipulationRequest<double>> PartnerEraser::on_batch(
    const std::vector<QueryRecord<double>>& batch, const AdversaryView<double>& view) {
  for (const auto& rec : batch) {
    uint64_t partner = rec.point ^ 1;
    if (partner >= view.domain_size) continue;
    if (view.is_queried(partner) || view.is_erased(partner)) continue;
    bool queued = false;
    for (uint64_t p : pending_) queued |= p == partner;
    if (!queued) pending_.push_back(partner);
  }
  std::vector<ManipulationRequest<double>> reqs;
  int64_t budget = view.remaining_budget;
  while (budget > 0 && !pending_.empty()) {
    uint64_t p = pending_.front();
    pending_.pop_front();
    if (view.is_erased(p) || view.is_queried(p)) continue;
    reqs.push_back({ManipulationKind::kErasure, p, 0});
    --budget;
  }
  return reqs;
}

}  // namespace olt
