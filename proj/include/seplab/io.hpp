#pragma once

#include "seplab/hierarchy.hpp"
#include "seplab/inner.hpp"
#include "seplab/pde.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <string>

namespace seplab::io {

/// Exact JSON form of one hierarchy entry: each polynomial as an integer
/// coefficient array over a common denominator (decimal strings, ascending
/// degree), root boxes as exact rational endpoint pairs.
nlohmann::json entry_to_json(const HierarchyEntry& e);
HierarchyEntry entry_from_json(const nlohmann::json& j);

nlohmann::json expansion_to_json(const inner::ExpansionData& e);

/// Run manifest written alongside every output set.
class Manifest {
  public:
    Manifest(std::string command, std::filesystem::path dir);
    void param(const std::string& key, const std::string& value);
    void param(const std::string& key, double value);
    void param(const std::string& key, long value);
    void add_output(const std::filesystem::path& file);
    void write();  // manifest.json in the output dir

  private:
    nlohmann::json j_;
    std::filesystem::path dir_;
    std::chrono::steady_clock::time_point start_;
};

/// Hierarchy with an optional on-disk memo directory (SEPLAB_CACHE); entries
/// round-trip exactly through the JSON form.
std::shared_ptr<Hierarchy> make_cached_hierarchy(int bound);
void save_hierarchy_cache(const Hierarchy& h, const std::filesystem::path& dir);
bool load_cached_entry(const std::filesystem::path& dir, int m, nlohmann::json& out);

/// Binary frame dump: row-major float64 u then eps*u_t, with a JSON header.
void write_frame(const FieldFrame& f, const std::filesystem::path& stem);
FieldFrame read_frame(const std::filesystem::path& stem);
void write_frame_csv(const FieldFrame& f, const std::filesystem::path& path);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace seplab::io
