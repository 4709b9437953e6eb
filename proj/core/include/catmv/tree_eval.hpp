#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "catmv/catalytic_state.hpp"
#include "catmv/instance.hpp"
#include "catmv/mv_family.hpp"
#include "catmv/one_level.hpp"

namespace catmv {

/// Where the root writes v_root.
enum class ValueSlotMode : std::uint8_t {
    /// The last coordinates of z stay catalytic; their initial contents are
    /// copied to free space and subtracted afterwards.
    CatalyticWithCopy,
    /// Those coordinates are free space owned by the run: zeroed first, read
    /// directly, and the tape contents underneath put back at the end.
    FreeSpaceBacked,
};

struct EvalOptions {
    ValueSlotMode value_slot = ValueSlotMode::CatalyticWithCopy;
    OneLevelOptions one_level;
    /// Throw RestorationError if a register is not restored.
    bool strict = true;
};

struct EvalResult {
    std::uint64_t value = 0;
    RestoreReport restore;
    std::uint64_t oracle_calls = 0;
    std::uint64_t peak_free_bits = 0;
};

/**
 * Catalytic evaluation of a binary instance on the registers of `state`:
 * one pass with gamma* = 1 writes v_root into the value slot of z, a second
 * pass with gamma* = -1 undoes everything.
 *
 * Throws InputError if the instance is not binary, the family is smaller
 * than 2^ell or the dimensions disagree.
 */
EvalResult eval_catalytic(const TreeEvalInstance &instance, const MvFamily &family,
                          CatalyticState &state, const EvalOptions &options = {});

/**
 * The child oracle seen by a one-level run at `path`: requests against
 * leaf children are served by adding the family vector directly; otherwise
 * the target register is swapped with z and the child's one-level run
 * performs the update.
 */
class TreeOracle final : public RegisterOracle {
public:
    TreeOracle(const TreeEvalInstance &instance, const MvFamily &family,
               const OneLevelOptions &options, NodePath path = {})
        : instance_(&instance), family_(&family), options_(options), path_(path) {}

    void apply(CatalyticState &state, const OracleRequest &request) override;
    NodePath path() const noexcept { return path_; }

private:
    const TreeEvalInstance *instance_;
    const MvFamily *family_;
    OneLevelOptions options_;
    NodePath path_;
};

/// Oracle calls of one full run (both passes): 2 * sum_{k=1}^{h} Q^k with
/// Q = 4 + 4 * 4^t.
std::uint64_t analytic_oracle_calls(unsigned h, std::size_t t);

/// One run's summary line, `key=value` pairs in a fixed order.
struct StatsRecord {
    std::string id;
    unsigned h = 0;
    unsigned ell = 0;
    std::size_t t = 0;
    std::uint64_t m = 0;
    std::size_t d = 0;
    std::uint64_t oracle_calls = 0;
    std::uint64_t peak_free_bits = 0;
    std::uint64_t catalytic_bits = 0;
    double wall_time_ms = 0;
    bool restored = false;
    std::uint64_t value = 0;

    std::string to_line() const;
    /// Throws InputError on a malformed line.
    static StatsRecord parse(const std::string &line);
};

} // namespace catmv
