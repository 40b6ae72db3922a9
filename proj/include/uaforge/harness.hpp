#ifndef UAFORGE_HARNESS_HPP_
#define UAFORGE_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uaforge::harness {

  enum class Status { Pass, Fail, Skipped };

  std::string_view to_string(Status s);

  struct ClaimResult {
    std::string   id;
    std::string   paper_location;
    Status        status = Status::Skipped;
    std::string   evidence;
    std::int64_t  elapsed_ms = 0;
    std::uint64_t instances  = 0;  // exhaustively checked cases
  };

  struct ClaimInfo {
    std::string id;
    std::string location;
    bool        parametric = false;  // depends on n
  };

  std::vector<ClaimInfo> const& registry();

  // Default size parameter for the powerset claims and the largest accepted.
  inline constexpr std::size_t kDefaultN = 3;
  inline constexpr std::size_t kMaxHarnessN = 4;

  // id may carry "?n=N", which overrides n. Throws Error on an unknown id and
  // GuardError when n is outside [3, kMaxHarnessN].
  ClaimResult run_claim(std::string_view id, std::size_t n = kDefaultN);

  // Claims whose id starts with filter, in registry order; executed in
  // parallel.
  std::vector<ClaimResult> run_all(std::string_view filter = {}, std::size_t n = kDefaultN);

  // {"claims":[...],"summary":{"pass":P,"fail":F}}
  std::string report_json(std::vector<ClaimResult> const& results);

  // One line per claim.
  std::string report_text(std::vector<ClaimResult> const& results);

}  // namespace uaforge::harness

#endif  // UAFORGE_HARNESS_HPP_
