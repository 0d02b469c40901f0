#pragma once

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "llab/game/game.hpp"
#include "llab/ots/scheme.hpp"
#include "llab/reduction/reduction.hpp"

namespace llab::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "k=v,k=v" parameters. Every getter records its default, so canonical()
/// lists the full effective parameter set in key order.
class Params {
 public:
  Params() = default;
  /// Throws UsageError on a malformed entry or a repeated key.
  static Params parse(std::string_view text);

  unsigned get_uint(const std::string& key, unsigned def);
  std::string get_string(const std::string& key, const std::string& def);
  bool has(const std::string& key) const { return given_.count(key) != 0; }
  /// Throws UsageError naming any given key no getter asked for.
  void finish() const;
  std::string canonical() const;

 private:
  std::map<std::string, std::string> given_;
  std::map<std::string, std::string> effective_;
};

struct SchemeEntry {
  std::string name;
  std::string summary;
  std::function<ots::SchemePtr(Params&)> make;
};

const std::vector<SchemeEntry>& schemes();
/// Throws UsageError for an unknown name or bad parameters.
ots::SchemePtr make_scheme(const std::string& name, Params& params);

struct Fixture {
  std::string name;
  game::AdversaryHandle adversary;
};

struct GameSetup {
  game::GamePtr game;
  std::vector<Fixture> fixtures;
};

struct GameEntry {
  std::string name;
  std::string summary;
  /// `scheme` is only read by games over a signature scheme.
  std::function<GameSetup(Params&, const std::string& scheme)> make;
};

const std::vector<GameEntry>& games();
GameSetup make_game(const std::string& name, Params& params, const std::string& scheme);

/// What cmd_reduction runs.
struct ReductionSetup {
  enum class Kind { lift, fdh_end_to_end, abstract_chain };
  Kind kind = Kind::lift;
  reduction::Reduction reduction;
  /// Internal-game adversaries by fixture name.
  std::vector<Fixture> fixtures;
  /// Fixture name -> an I/O-equal twin for the dominance check.
  std::map<std::string, game::AdversaryHandle> twins;
  /// The abstract chain for Kind::abstract_chain.
  std::vector<reduction::Reduction> chain;
};

struct ReductionEntry {
  std::string name;
  std::string summary;
  std::function<ReductionSetup(Params&)> make;
};

const std::vector<ReductionEntry>& reductions();
ReductionSetup make_reduction_setup(const std::string& name, Params& params);

/// Throws UsageError listing the available names.
const Fixture& find_fixture(const std::vector<Fixture>& fixtures, const std::string& name);

/// The registry as printed by `llab list`.
std::string list_text();

}  // namespace llab::cli
