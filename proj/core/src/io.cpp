#include "pmanip/io.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "json.hpp"

namespace pmanip {

using nlohmann::json;

ParseError::ParseError(int line, int column, const std::string& message)
    : ParameterError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                     ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

struct Line {
  int number;
  std::string key;
  std::string_view body;
  int body_column;  // 1-based column of body[0]
};

bool blank(char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; }

// Splits `text` (starting at column `col`) on `sep`; whitespace-only parts
// are kept so callers can report empty chain elements.
std::vector<std::pair<std::string_view, int>> split(std::string_view text, int col, char sep) {
  std::vector<std::pair<std::string_view, int>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      out.emplace_back(text.substr(start, i - start), col + static_cast<int>(start));
      start = i + 1;
    }
  }
  return out;
}

std::vector<Token> words(std::string_view text, int col) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && blank(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !blank(text[i])) ++i;
    if (i > start)
      out.push_back({std::string(text.substr(start, i - start)), col + static_cast<int>(start)});
  }
  return out;
}

std::vector<Line> logical_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::size_t first = 0;
    while (first < raw.size() && blank(raw[first])) ++first;
    if (first == raw.size()) {
      if (end == text.size()) break;
      continue;
    }
    const auto colon = raw.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(number, static_cast<int>(first) + 1, "expected 'key: value'");
    std::string key(raw.substr(first, colon - first));
    while (!key.empty() && blank(key.back())) key.pop_back();
    out.push_back({number, key, raw.substr(colon + 1), static_cast<int>(colon) + 2});
    if (end == text.size()) break;
  }
  return out;
}

int parse_int(const Token& tok, int line) {
  int value = 0;
  const char* b = tok.text.data();
  const char* e = b + tok.text.size();
  auto [ptr, ec] = std::from_chars(b, e, value);
  if (ec != std::errc() || ptr != e)
    throw ParseError(line, tok.column, "expected an integer, got '" + tok.text + "'");
  return value;
}

Candidate lookup(const CandidateSet& cands, const Token& tok, int line) {
  auto c = cands.find(tok.text);
  if (!c) throw ParseError(line, tok.column, "unknown candidate '" + tok.text + "'");
  return *c;
}

std::vector<Candidate> parse_chain(const CandidateSet& cands, std::string_view text, int col,
                                   int line) {
  std::vector<Candidate> chain;
  for (auto [part, pcol] : split(text, col, '>')) {
    auto toks = words(part, pcol);
    if (toks.size() != 1)
      throw ParseError(line, toks.empty() ? pcol : toks[1].column,
                       "expected exactly one candidate between '>' separators");
    chain.push_back(lookup(cands, toks[0], line));
  }
  return chain;
}

RuleSpec parse_rule_words(const std::vector<Token>& toks, int line) {
  if (toks.empty()) throw ParseError(line, 1, "rule name missing");
  if (toks.size() > 2) throw ParseError(line, toks[2].column, "unexpected text after rule");
  std::optional<int> k;
  std::optional<std::vector<int>> scores;
  if (toks.size() == 2) {
    if (toks[0].text == "scoring") {
      scores.emplace();
      for (auto [part, pcol] : split(toks[1].text, toks[1].column, ','))
        scores->push_back(parse_int(Token{std::string(part), pcol}, line));
    } else {
      k = parse_int(toks[1], line);
    }
  }
  try {
    return parse_rule(toks[0].text, k, scores);
  } catch (const ParameterError& e) {
    throw ParseError(line, toks[0].column, e.what());
  }
}

std::string join_vote(const CandidateSet& cands, const std::vector<Candidate>& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) out += " > ";
    out += cands.label(chain[i]);
  }
  return out;
}

}  // namespace

Profile ElectionFile::profile() const {
  Profile p{candidates, {}};
  for (const auto& v : votes) {
    if (!v.is_complete()) throw ParameterError("expected complete votes only");
    p.votes.push_back(first_extension(v));
  }
  return p;
}

ManipulationInstance ElectionFile::instance() const {
  if (!rule) throw ParameterError("no rule given (file 'rule:' line or --rule)");
  if (!preferred) throw ParameterError("no preferred candidate given ('preferred:' line)");
  ManipulationInstance inst{*rule, partial(), manipulators.value_or(1), *preferred};
  inst.validate();
  return inst;
}

ElectionFile parse_election(std::string_view text) {
  ElectionFile f;
  bool have_candidates = false;
  for (const Line& ln : logical_lines(text)) {
    const int L = ln.number;
    if (ln.key == "candidates") {
      if (have_candidates) throw ParseError(L, 1, "candidates declared twice");
      std::vector<std::string> labels;
      for (const auto& tok : words(ln.body, ln.body_column)) {
        if (tok.text.find_first_of(">;,") != std::string::npos)
          throw ParseError(L, tok.column, "candidate labels may not contain '>', ';' or ','");
        if (std::find(labels.begin(), labels.end(), tok.text) != labels.end())
          throw ParseError(L, tok.column, "duplicate candidate '" + tok.text + "'");
        labels.push_back(tok.text);
      }
      if (labels.empty()) throw ParseError(L, ln.body_column, "no candidates listed");
      try {
        f.candidates = CandidateSet(labels);
      } catch (const ParameterError& e) {
        throw ParseError(L, ln.body_column, e.what());
      }
      have_candidates = true;
      continue;
    }
    if (!have_candidates && (ln.key == "vote" || ln.key == "pvote" || ln.key == "preferred"))
      throw ParseError(L, 1, "'" + ln.key + "' before 'candidates'");
    if (ln.key == "vote") {
      auto chain = parse_chain(f.candidates, ln.body, ln.body_column, L);
      LinearVote v{chain};
      if (!v.is_permutation_of(f.candidates.size()))
        throw ParseError(L, ln.body_column, "a vote must rank every candidate exactly once");
      f.votes.push_back(PartialVote::from_linear(v));
    } else if (ln.key == "pvote") {
      std::vector<std::pair<Candidate, Candidate>> pairs;
      if (!words(ln.body, ln.body_column).empty()) {
        for (auto [part, pcol] : split(ln.body, ln.body_column, ';')) {
          auto chain = parse_chain(f.candidates, part, pcol, L);
          for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            pairs.emplace_back(chain[i], chain[i + 1]);
        }
      }
      try {
        f.votes.push_back(transitive_close(pairs, f.candidates.size()));
      } catch (const CycleError& e) {
        throw ParseError(L, ln.body_column, e.what());
      }
    } else if (ln.key == "manipulators") {
      auto toks = words(ln.body, ln.body_column);
      if (toks.size() != 1) throw ParseError(L, ln.body_column, "expected one integer");
      f.manipulators = parse_int(toks[0], L);
    } else if (ln.key == "preferred") {
      auto toks = words(ln.body, ln.body_column);
      if (toks.size() != 1) throw ParseError(L, ln.body_column, "expected one candidate");
      f.preferred = lookup(f.candidates, toks[0], L);
    } else if (ln.key == "rule") {
      f.rule = parse_rule_words(words(ln.body, ln.body_column), L);
    } else {
      throw ParseError(L, 1, "unknown key '" + ln.key + "'");
    }
  }
  if (!have_candidates) throw ParseError(1, 1, "missing 'candidates:' line");
  return f;
}

std::string serialize_election(const ElectionFile& f) {
  std::ostringstream os;
  os << "candidates:";
  for (const auto& l : f.candidates.labels()) os << ' ' << l;
  os << '\n';
  if (f.rule) os << "rule: " << f.rule->describe() << '\n';
  if (f.manipulators) os << "manipulators: " << *f.manipulators << '\n';
  if (f.preferred) os << "preferred: " << f.candidates.label(*f.preferred) << '\n';
  for (const auto& v : f.votes) {
    if (v.is_complete()) {
      os << "vote: " << join_vote(f.candidates, first_extension(v).ranking) << '\n';
      continue;
    }
    os << "pvote:";
    // Cover pairs glued into chains where the head of one pair continues
    // the previous one.
    auto covers = v.cover_pairs();
    std::vector<std::vector<Candidate>> chains;
    for (auto [a, b] : covers) {
      if (!chains.empty() && chains.back().back() == a) chains.back().push_back(b);
      else chains.push_back({a, b});
    }
    for (std::size_t i = 0; i < chains.size(); ++i)
      os << (i ? " ; " : " ") << join_vote(f.candidates, chains[i]);
    os << '\n';
  }
  return os.str();
}

ElectionFile election_from(const ManipulationInstance& inst) {
  ElectionFile f;
  f.candidates = inst.partial.candidates;
  f.votes = inst.partial.votes;
  f.manipulators = inst.manipulators;
  f.preferred = inst.preferred;
  f.rule = inst.rule;
  return f;
}

X3CInstance parse_x3c(std::string_view text) {
  X3CInstance x;
  bool have_universe = false;
  for (const Line& ln : logical_lines(text)) {
    auto toks = words(ln.body, ln.body_column);
    if (ln.key == "universe") {
      if (toks.size() != 1) throw ParseError(ln.number, ln.body_column, "expected one integer");
      x.universe_size = parse_int(toks[0], ln.number);
      have_universe = true;
    } else if (ln.key == "set") {
      if (!have_universe) throw ParseError(ln.number, 1, "'set' before 'universe'");
      if (toks.size() != 3)
        throw ParseError(ln.number, ln.body_column, "a set lists exactly three elements");
      std::array<int, 3> s{};
      for (int i = 0; i < 3; ++i) {
        s[i] = parse_int(toks[i], ln.number) - 1;
        if (s[i] < 0 || s[i] >= x.universe_size)
          throw ParseError(ln.number, toks[i].column, "element outside 1..universe");
      }
      x.sets.push_back(s);
    } else {
      throw ParseError(ln.number, 1, "unknown key '" + ln.key + "'");
    }
  }
  if (!have_universe) throw ParseError(1, 1, "missing 'universe:' line");
  try {
    x.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const ParameterError& e) {
    throw ParseError(1, 1, e.what());
  }
  return x;
}

std::string serialize_x3c(const X3CInstance& x) {
  std::ostringstream os;
  os << "universe: " << x.universe_size << '\n';
  for (const auto& s : x.sets) os << "set: " << s[0] + 1 << ' ' << s[1] + 1 << ' ' << s[2] + 1 << '\n';
  return os.str();
}

MarginTarget parse_margin_target(std::string_view text) {
  std::vector<std::vector<int>> rows;
  int number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto toks = words(raw, 1);
    if (toks.empty()) continue;
    std::vector<int> row;
    for (const auto& tok : toks) row.push_back(parse_int(tok, number));
    rows.push_back(std::move(row));
  }
  MarginTarget t;
  t.m = static_cast<int>(rows.size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != t.m)
      throw ParseError(1, 1, "margin table must be square");
    t.f.insert(t.f.end(), r.begin(), r.end());
  }
  t.validate();
  return t;
}

namespace {

std::vector<LabelVote> to_labels(const std::vector<LinearVote>& votes, const CandidateSet& cands) {
  std::vector<LabelVote> out;
  for (const auto& v : votes) {
    LabelVote lv;
    for (Candidate c : v.ranking) lv.push_back(cands.label(c));
    out.push_back(std::move(lv));
  }
  return out;
}

std::vector<LinearVote> from_labels(const std::vector<LabelVote>& votes,
                                    const CandidateSet& cands) {
  std::vector<LinearVote> out;
  for (const auto& lv : votes) {
    LinearVote v;
    for (const auto& l : lv) {
      auto c = cands.find(l);
      if (!c) throw ParameterError("witness names unknown candidate '" + l + "'");
      v.ranking.push_back(*c);
    }
    out.push_back(std::move(v));
  }
  return out;
}

json votes_json(const std::optional<std::vector<LabelVote>>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<std::vector<LabelVote>> votes_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::vector<LabelVote>>();
}

}  // namespace

ResultRecord make_record(Problem problem, const RuleSpec& rule, const SolveResult& result,
                         const CandidateSet& candidates, double elapsed_ms,
                         const std::string& algorithm) {
  ResultRecord r;
  r.problem = problem_name(problem);
  r.rule = rule.describe();
  r.answer = result.answer ? "yes" : "no";
  if (result.answer && result.witness && problem != Problem::kNW) {
    r.manipulator_votes = to_labels(result.witness->manipulator_votes, candidates);
    if (result.witness->extension) r.extension = to_labels(*result.witness->extension, candidates);
  }
  if (result.counterexample) r.counterexample = to_labels(*result.counterexample, candidates);
  r.elapsed_ms = elapsed_ms;
  r.nodes = result.stats.nodes;
  r.algorithm = algorithm;
  return r;
}

SolveResult result_from_record(const ResultRecord& record, const CandidateSet& candidates) {
  SolveResult r;
  if (record.answer != "yes" && record.answer != "no")
    throw ParameterError("answer must be 'yes' or 'no'");
  r.answer = record.answer == "yes";
  if (record.manipulator_votes || record.extension) {
    Witness w;
    if (record.manipulator_votes) w.manipulator_votes = from_labels(*record.manipulator_votes, candidates);
    if (record.extension) w.extension = from_labels(*record.extension, candidates);
    r.witness = std::move(w);
  }
  if (record.counterexample) r.counterexample = from_labels(*record.counterexample, candidates);
  r.stats.nodes = record.nodes;
  return r;
}

std::string to_json(const ResultRecord& record) {
  json j;
  j["problem"] = record.problem;
  j["rule"] = record.rule;
  j["answer"] = record.answer;
  if (record.manipulator_votes || record.extension)
    j["witness"] = {{"manipulator_votes", votes_json(record.manipulator_votes)},
                    {"extension", votes_json(record.extension)}};
  else
    j["witness"] = nullptr;
  if (record.counterexample) j["counterexample"] = *record.counterexample;
  j["stats"] = {{"elapsed_ms", record.elapsed_ms}, {"nodes", record.nodes}};
  if (!record.algorithm.empty()) j["algorithm"] = record.algorithm;
  return j.dump();
}

ResultRecord parse_record(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("result record is not valid JSON: ") + e.what());
  }
  try {
    ResultRecord r;
    r.problem = j.at("problem").get<std::string>();
    r.rule = j.at("rule").get<std::string>();
    r.answer = j.at("answer").get<std::string>();
    const json& w = j.at("witness");
    if (!w.is_null()) {
      r.manipulator_votes = votes_from(w, "manipulator_votes");
      r.extension = votes_from(w, "extension");
    }
    r.counterexample = votes_from(j, "counterexample");
    const json& s = j.at("stats");
    r.elapsed_ms = s.value("elapsed_ms", 0.0);
    r.nodes = s.value("nodes", std::uint64_t{0});
    r.algorithm = j.value("algorithm", std::string());
    return r;
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed result record: ") + e.what());
  }
}

Verdict verify_record(const ElectionFile& file, const ResultRecord& record,
                      std::uint64_t budget) {
  const Problem problem = parse_problem(record.problem);
  auto toks = words(record.rule, 1);
  RuleSpec rule = parse_rule_words(toks, 1);
  ElectionFile f = file;
  f.rule = rule;
  if (problem == Problem::kPW || problem == Problem::kNW) f.manipulators = 1;
  const ManipulationInstance inst = f.instance();
  const SolveResult result = result_from_record(record, f.candidates);
  OracleOptions opts;
  opts.budget = budget;
  return verify_result(problem, inst, result, opts);
}

}  // namespace pmanip
