#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace edp {

enum class ErrorCode {
  InvalidInput,
  NoInducedAction,
  NotPGroup,
  RankDeficient,
  LimitExceeded,
  NotACharacter,
  IncompatibleRep,
  RankDeficientWeights,
  NotPFaithfulForRank,
  NotPFaithful,
  VNotPFaithful,
  NotAbelianComponent,
  Inconclusive,
  Unsupported,
  WitnessNotFree,
  BadModulus,
  BudgetExceeded,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::NoInducedAction: return "NO_INDUCED_ACTION";
    case ErrorCode::NotPGroup: return "NOT_P_GROUP";
    case ErrorCode::RankDeficient: return "RANK_DEFICIENT";
    case ErrorCode::LimitExceeded: return "LIMIT_EXCEEDED";
    case ErrorCode::NotACharacter: return "NOT_A_CHARACTER";
    case ErrorCode::IncompatibleRep: return "INCOMPATIBLE_REP";
    case ErrorCode::RankDeficientWeights: return "RANK_DEFICIENT_WEIGHTS";
    case ErrorCode::NotPFaithfulForRank: return "NOT_P_FAITHFUL_FOR_RANK";
    case ErrorCode::NotPFaithful: return "NOT_P_FAITHFUL";
    case ErrorCode::VNotPFaithful: return "V_NOT_P_FAITHFUL";
    case ErrorCode::NotAbelianComponent: return "NOT_ABELIAN_COMPONENT";
    case ErrorCode::Inconclusive: return "INCONCLUSIVE";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
    case ErrorCode::WitnessNotFree: return "WITNESS_NOT_FREE";
    case ErrorCode::BadModulus: return "BAD_MODULUS";
    case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

/// Caps shared by every enumeration in the library.
struct Limits {
  std::size_t max_elements = 1'000'000;
  std::uint64_t max_steps = 100'000'000;
};

}  // namespace edp
