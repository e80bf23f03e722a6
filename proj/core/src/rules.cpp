#include "pmanip/rules.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace pmanip {

ScoreVector::ScoreVector(std::vector<int> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw ParameterError("score vector must not be empty");
  for (std::size_t i = 1; i < alphas_.size(); ++i)
    if (alphas_[i] > alphas_[i - 1])
      throw ParameterError("score vector must be non-increasing");
  if (alphas_.size() >= 2 && alphas_.front() == alphas_.back())
    throw ParameterError("score vector needs alpha_1 > alpha_m");
}

ScoreVector ScoreVector::plurality(int m) { return k_approval(m, 1); }
ScoreVector ScoreVector::veto(int m) { return k_veto(m, 1); }

ScoreVector ScoreVector::k_approval(int m, int k) {
  std::vector<int> a(m, 0);
  for (int i = 0; i < k && i < m; ++i) a[i] = 1;
  return ScoreVector(std::move(a));
}

ScoreVector ScoreVector::k_veto(int m, int k) {
  std::vector<int> a(m, 0);
  for (int i = std::max(0, m - k); i < m; ++i) a[i] = -1;
  return ScoreVector(std::move(a));
}

ScoreVector ScoreVector::borda(int m) {
  std::vector<int> a(m);
  for (int i = 0; i < m; ++i) a[i] = m - 1 - i;
  return ScoreVector(std::move(a));
}

bool ScoreVector::normalized() const {
  const int m = size();
  for (int j = 0; j + 1 < m; ++j) {
    if (alphas_[j] - alphas_[j + 1] != 1) continue;
    bool zeros = true;
    for (int k = j + 1; k < m; ++k) zeros = zeros && alphas_[k] == 0;
    if (zeros) return true;
  }
  return false;
}

bool RuleSpec::is_positional() const {
  switch (kind) {
    case RuleKind::kPositional:
    case RuleKind::kPlurality:
    case RuleKind::kVeto:
    case RuleKind::kKApproval:
    case RuleKind::kKVeto:
    case RuleKind::kBorda:
      return true;
    default:
      return false;
  }
}

void RuleSpec::validate(int m) const {
  const bool wants_k = kind == RuleKind::kKApproval || kind == RuleKind::kKVeto;
  if (wants_k != k.has_value())
    throw ParameterError("k must be given exactly for k-approval and k-veto");
  if (wants_k && (*k < 1 || *k >= m))
    throw ParameterError("k must satisfy 1 <= k < m (k=" + std::to_string(*k) +
                         ", m=" + std::to_string(m) + ")");
  const bool wants_scores = kind == RuleKind::kPositional;
  if (wants_scores != scores.has_value())
    throw ParameterError("a score vector must be given exactly for scoring rules");
  if (wants_scores && scores->size() != m)
    throw ParameterError("score vector length differs from the candidate count");
}

ScoreVector RuleSpec::score_vector(int m) const {
  switch (kind) {
    case RuleKind::kPositional:
      return *scores;
    case RuleKind::kPlurality:
      return m == 1 ? ScoreVector({1}) : ScoreVector::plurality(m);
    case RuleKind::kVeto:
      return m == 1 ? ScoreVector({0}) : ScoreVector::veto(m);
    case RuleKind::kKApproval:
      return ScoreVector::k_approval(m, *k);
    case RuleKind::kKVeto:
      return ScoreVector::k_veto(m, *k);
    case RuleKind::kBorda:
      return m == 1 ? ScoreVector({0}) : ScoreVector::borda(m);
    default:
      throw ParameterError("rule '" + name() + "' is not positional");
  }
}

std::string RuleSpec::name() const {
  switch (kind) {
    case RuleKind::kPositional: return "scoring";
    case RuleKind::kPlurality: return "plurality";
    case RuleKind::kVeto: return "veto";
    case RuleKind::kKApproval: return "k-approval";
    case RuleKind::kKVeto: return "k-veto";
    case RuleKind::kBorda: return "borda";
    case RuleKind::kBucklin: return "bucklin";
    case RuleKind::kMaximin: return "maximin";
    case RuleKind::kCopeland: return "copeland";
  }
  return "unknown";
}

std::string RuleSpec::describe() const {
  std::ostringstream os;
  os << name();
  if (k) os << ' ' << *k;
  if (scores) {
    os << ' ';
    for (int i = 0; i < scores->size(); ++i) os << (i ? "," : "") << (*scores)[i];
  }
  return os.str();
}

RuleSpec parse_rule(const std::string& name, std::optional<int> k,
                    const std::optional<std::vector<int>>& scores) {
  RuleSpec r;
  if (name == "plurality") r.kind = RuleKind::kPlurality;
  else if (name == "veto") r.kind = RuleKind::kVeto;
  else if (name == "k-approval") r.kind = RuleKind::kKApproval;
  else if (name == "k-veto") r.kind = RuleKind::kKVeto;
  else if (name == "borda") r.kind = RuleKind::kBorda;
  else if (name == "scoring") r.kind = RuleKind::kPositional;
  else if (name == "bucklin") r.kind = RuleKind::kBucklin;
  else if (name == "maximin") r.kind = RuleKind::kMaximin;
  else if (name == "copeland") r.kind = RuleKind::kCopeland;
  else throw ParameterError("unknown rule '" + name + "'");
  if (r.kind == RuleKind::kKApproval || r.kind == RuleKind::kKVeto) {
    if (!k) throw ParameterError("rule '" + name + "' needs k");
    r.k = k;
  }
  if (r.kind == RuleKind::kPositional) {
    if (!scores) throw ParameterError("rule 'scoring' needs a score vector");
    r.scores = ScoreVector(*scores);
  }
  return r;
}

MarginMatrix::MarginMatrix(int m, int n) : m_(m), n_(n), d_(static_cast<std::size_t>(m) * m, 0) {}

bool MarginMatrix::well_formed() const {
  for (int x = 0; x < m_; ++x) {
    if ((*this)(x, x) != 0) return false;
    for (int y = 0; y < m_; ++y) {
      const int d = (*this)(x, y);
      if (d != -(*this)(y, x)) return false;
      if (x != y && (std::abs(d) > n_ || (std::abs(d) - n_) % 2 != 0)) return false;
    }
  }
  return true;
}

Evaluator::Evaluator(const RuleSpec& rule, int m) : rule_(rule), m_(m) {
  rule_.validate(m);
  if (rule_.is_positional()) {
    mode_ = Mode::kPositional;
    alphas_ = rule_.score_vector(m).alphas();
    dim_ = m;
  } else if (rule_.kind == RuleKind::kBucklin) {
    mode_ = Mode::kBucklin;
    dim_ = m * m;
  } else {
    mode_ = rule_.kind == RuleKind::kMaximin ? Mode::kMaximin : Mode::kCopeland;
    dim_ = m * m;
  }
}

void Evaluator::accumulate(std::span<int> acc, const LinearVote& v) const {
  const auto& r = v.ranking;
  switch (mode_) {
    case Mode::kPositional:
      for (int i = 0; i < m_; ++i) acc[r[i]] += alphas_[i];
      break;
    case Mode::kBucklin:
      // acc[c*m + p]: number of votes ranking c at position p.
      for (int i = 0; i < m_; ++i) acc[r[i] * m_ + i] += 1;
      break;
    case Mode::kMaximin:
    case Mode::kCopeland:
      for (int i = 0; i < m_; ++i) {
        for (int j = i + 1; j < m_; ++j) {
          acc[r[i] * m_ + r[j]] += 1;
          acc[r[j] * m_ + r[i]] -= 1;
        }
      }
      break;
  }
}

std::vector<int> Evaluator::contribution(const LinearVote& v) const {
  std::vector<int> out(dim_, 0);
  accumulate(out, v);
  return out;
}

int Evaluator::score_of(std::span<const int> acc, int votes, Candidate x) const {
  switch (mode_) {
    case Mode::kPositional:
      return acc[x];
    case Mode::kBucklin: {
      int count = 0;
      for (int level = 1; level <= m_; ++level) {
        count += acc[x * m_ + level - 1];
        if (2 * count > votes) return level;
      }
      return m_ + 1;  // only reachable with zero votes
    }
    case Mode::kMaximin: {
      int best = m_ == 1 ? 0 : std::numeric_limits<int>::max();
      for (int y = 0; y < m_; ++y)
        if (y != x) best = std::min(best, acc[x * m_ + y]);
      return best;
    }
    case Mode::kCopeland: {
      int wins = 0;
      for (int y = 0; y < m_; ++y)
        if (y != x && acc[x * m_ + y] > 0) ++wins;
      return wins;
    }
  }
  return 0;
}

std::vector<int> Evaluator::scores(std::span<const int> acc, int votes) const {
  std::vector<int> s(m_);
  for (Candidate c = 0; c < m_; ++c) s[c] = score_of(acc, votes, c);
  return s;
}

std::optional<Candidate> Evaluator::winner(std::span<const int> acc, int votes) const {
  const std::vector<int> s = scores(acc, votes);
  const bool low = rule_.lower_is_better();
  Candidate best = 0;
  bool tied = false;
  for (Candidate c = 1; c < m_; ++c) {
    const bool better = low ? s[c] < s[best] : s[c] > s[best];
    if (better) {
      best = c;
      tied = false;
    } else if (s[c] == s[best]) {
      tied = true;
    }
  }
  if (tied) return std::nullopt;
  return best;
}

bool Evaluator::wins(std::span<const int> acc, int votes, Candidate c) const {
  const int sc = score_of(acc, votes, c);
  const bool low = rule_.lower_is_better();
  for (Candidate x = 0; x < m_; ++x) {
    if (x == c) continue;
    const int sx = score_of(acc, votes, x);
    if (low ? sx <= sc : sx >= sc) return false;
  }
  return true;
}

std::vector<int> positional_scores(const ScoreVector& sv, const Profile& p) {
  if (sv.size() != p.m()) throw ParameterError("score vector length differs from m");
  std::vector<int> s(p.m(), 0);
  for (const auto& v : p.votes)
    for (int i = 0; i < p.m(); ++i) s[v.ranking[i]] += sv[i];
  return s;
}

MarginMatrix margins(const Profile& p) {
  MarginMatrix d(p.m(), p.n());
  for (const auto& v : p.votes) {
    for (int i = 0; i < p.m(); ++i) {
      for (int j = i + 1; j < p.m(); ++j) {
        d.at(v.ranking[i], v.ranking[j]) += 1;
        d.at(v.ranking[j], v.ranking[i]) -= 1;
      }
    }
  }
  return d;
}

namespace {

std::vector<int> tally(const Evaluator& ev, const Profile& p) {
  std::vector<int> acc(ev.dimension(), 0);
  for (const auto& v : p.votes) ev.accumulate(acc, v);
  return acc;
}

}  // namespace

std::vector<int> rule_scores(const RuleSpec& r, const Profile& p) {
  Evaluator ev(r, p.m());
  return ev.scores(tally(ev, p), p.n());
}

std::optional<Candidate> unique_winner(const RuleSpec& r, const Profile& p) {
  Evaluator ev(r, p.m());
  return ev.winner(tally(ev, p), p.n());
}

}  // namespace pmanip
