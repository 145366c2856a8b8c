#pragma once

// Run configuration, the on-disk result cache and the catalog/file suite.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fusionlab/fusion.hpp"

namespace fusionlab {

enum class OutputFormat { Text, Tsv };

struct RunConfig {
  std::size_t order_cap = 1000;
  std::size_t aut_cap = 256;
  std::filesystem::path cache_dir = ".fusionlab-cache";
  OutputFormat output_format = OutputFormat::Text;
  std::filesystem::path report_dir = "fusionlab-reports";
  std::vector<unsigned> primes{2, 3};
};

/// Defaults, with FUSIONLAB_CACHE overriding cache_dir.
RunConfig default_config();
/// Installs the caps as the library limits; throws ParseError unless both are positive.
void apply_limits(const RunConfig& config);

/// A path to a group file, or `cat:NAME` for a catalog group.
GroupPtr load_group(std::string_view arg);

/// Generators in cycle notation (element indices for table groups) and the order.
std::string describe_subgroup(const Subgroup& H);
std::string describe_morphism(const GroupMorphism& phi);

/// JSON files holding the subgroup lattice of G and the hom-sets of F_S(G),
/// keyed by the content hash of the Cayley table and p.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::filesystem::path file_for(const FiniteGroup& G, unsigned p) const;
  /// F_S(G) with the lattice of G and every hom-set filled from the cache;
  /// nullopt when there is no entry. Throws CacheCorrupt when the entry cannot
  /// be used (validated lattice entries may already have been installed).
  std::optional<FusionSystem> load(const GroupPtr& G, unsigned p) const;
  /// Atomic write (temporary file, then rename).
  void store(const GroupPtr& G, const FusionSystem& F) const;

 private:
  std::filesystem::path dir_;
};

/// Writes `text` to `path` through a temporary file in the same directory.
void write_atomically(const std::filesystem::path& path, const std::string& text);

struct InstanceReport {
  std::string group;
  unsigned p = 0;
  std::vector<std::pair<std::string, std::string>> rows;
  bool hard_failure = false;
  bool contradiction = false;
  std::string failure;
  std::string witness;  // full dump for hard failures
  std::string skipped;  // reason when the instance did not run
  std::string file_stem() const;
  std::string format(OutputFormat fmt) const;
};

/// Every check of the sweep on F_S(G). Exceptions from the checks become hard failures.
InstanceReport run_instance(const GroupPtr& G, unsigned p, const ResultCache* cache = nullptr,
                            std::vector<std::string>* warnings = nullptr);

struct SuiteSummary {
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::size_t contradictions = 0;
  std::vector<std::string> warnings;
  std::vector<InstanceReport> reports;
  std::string format(OutputFormat fmt) const;
  int exit_code() const { return failed > 0 ? 2 : 0; }
};

/// Validates the catalog, then runs every (group, p) with p | |G| for p in
/// config.primes. An empty `files` list with `use_catalog` false is an empty
/// run. Reports go to config.report_dir, one file per instance.
SuiteSummary run_suite(const RunConfig& config, bool use_catalog, const std::vector<std::string>& files);

}  // namespace fusionlab
