#pragma once

// Text formats: election files, X3C files, margin tables and JSON result
// records.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmanip/gadgets.hpp"
#include "pmanip/oracle.hpp"

namespace pmanip {

class ParseError : public ParameterError {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// candidates: a b c
/// vote: a > b > c          (complete ranking)
/// pvote: a > b ; b > d     (chains, closed transitively)
/// manipulators: 2
/// preferred: a
/// rule: k-approval 2       (or: scoring 3,1,0)
/// # comment
struct ElectionFile {
  CandidateSet candidates;
  std::vector<PartialVote> votes;
  std::optional<int> manipulators;
  std::optional<Candidate> preferred;
  std::optional<RuleSpec> rule;

  PartialProfile partial() const { return {candidates, votes}; }
  /// Requires every vote to be complete.
  Profile profile() const;
  /// Fills in defaults from the file; throws ParameterError when the rule
  /// or preferred candidate is missing or the instance is invalid.
  ManipulationInstance instance() const;
};

ElectionFile parse_election(std::string_view text);
std::string serialize_election(const ElectionFile& f);
ElectionFile election_from(const ManipulationInstance& inst);

/// universe: q
/// set: i j k               (1-based)
X3CInstance parse_x3c(std::string_view text);
std::string serialize_x3c(const X3CInstance& x);

/// m rows of m integers.
MarginTarget parse_margin_target(std::string_view text);

using LabelVote = std::vector<std::string>;

struct ResultRecord {
  std::string problem;
  std::string rule;
  std::string answer;  // "yes" / "no"
  std::optional<std::vector<LabelVote>> manipulator_votes;
  std::optional<std::vector<LabelVote>> extension;
  std::optional<std::vector<LabelVote>> counterexample;
  double elapsed_ms = 0;
  std::uint64_t nodes = 0;
  std::string algorithm;
};

ResultRecord make_record(Problem problem, const RuleSpec& rule, const SolveResult& result,
                         const CandidateSet& candidates, double elapsed_ms,
                         const std::string& algorithm);
SolveResult result_from_record(const ResultRecord& record, const CandidateSet& candidates);

/// Keys problem, rule, answer, witness, stats are always present; witness is
/// null for "no" answers and for necessary-winner "yes" answers.
std::string to_json(const ResultRecord& record);
ResultRecord parse_record(std::string_view json);

/// Checks a record against the instance file. For PW/NW the file's
/// manipulator count is ignored.
Verdict verify_record(const ElectionFile& file, const ResultRecord& record,
                      std::uint64_t budget = kDefaultBudget);

}  // namespace pmanip
