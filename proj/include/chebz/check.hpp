#pragma once

#include <string_view>

namespace chebz {

enum class CheckStatus {
  Pass,           // hypothesis holds and so does the bound
  Fail,           // hypothesis holds, bound violated
  NotApplicable,  // hypothesis does not hold
  Degenerate,     // function numerically zero / constant; nothing to count
};

constexpr std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not-applicable";
    case CheckStatus::Degenerate: return "degenerate";
  }
  return "?";
}

}  // namespace chebz
