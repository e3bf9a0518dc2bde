#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ghost/object_model.hpp"

namespace ghost {

// ---- proxy ids --------------------------------------------------------------

inline constexpr int64_t kMaxGraphId = (1 << 15) - 1;
inline constexpr int64_t kMaxPosition = (1 << 16) - 1;

/// (graphID << 16) | position, packed into one immediate integer.
int64_t encode_proxy_id(int64_t graph_id, int64_t position);
std::pair<int64_t, int64_t> decode_proxy_id(int64_t encoded);

// ---- segment store -----------------------------------------------------------

class SegmentStore {
public:
    virtual ~SegmentStore() = default;
    virtual void put(uint16_t graph_id, const std::string& bytes) = 0;
    virtual std::optional<std::string> get(uint16_t graph_id) const = 0;
    virtual void erase(uint16_t graph_id) = 0;
};

class InMemorySegmentStore : public SegmentStore {
public:
    void put(uint16_t graph_id, const std::string& bytes) override;
    std::optional<std::string> get(uint16_t graph_id) const override;
    void erase(uint16_t graph_id) override;

private:
    std::map<uint16_t, std::string> segments_;
};

/// Files named graph-<id>.gsw; writes go to a temp file first and are
/// renamed into place.
class DirectorySegmentStore : public SegmentStore {
public:
    explicit DirectorySegmentStore(std::filesystem::path dir);
    void put(uint16_t graph_id, const std::string& bytes) override;
    std::optional<std::string> get(uint16_t graph_id) const override;
    void erase(uint16_t graph_id) override;

private:
    std::filesystem::path path_for(uint16_t graph_id) const;
    std::filesystem::path dir_;
};

// ---- segment codec ------------------------------------------------------------

struct SegmentSlot {
    enum class Tag : uint8_t { nil = 0, immediate = 1, in_graph = 2, external = 3 };
    Tag tag = Tag::nil;
    int64_t immediate = 0;
    uint32_t position = 0; // in_graph
    uint32_t external = 0; // index into the external table
};

struct SegmentRecord {
    std::string class_name;
    bool byte_body = false;
    std::vector<SegmentSlot> slots;
    std::string bytes;
};

struct Segment {
    uint16_t graph_id = 0;
    std::vector<SegmentRecord> records;
    std::vector<uint32_t> externals; // object table ordinals
};

std::string serialize_segment(const Segment& segment);
Segment deserialize_segment(const std::string& bytes);

// ---- swapping -------------------------------------------------------------------

/// Serializes the transitive closure of `roots` (cut at classes and symbols
/// that are not themselves roots), replaces externally referenced members
/// with minimal proxies carrying a packed proxy id, and tombstones the
/// members. Answers the graph id.
uint16_t swap_out(Runtime& rt, const std::vector<ObjectHandle>& roots);

/// Materializes the graph, forwards every live proxy of the graph to its
/// materialized object, and retires the segment.
void swap_in(Runtime& rt, uint16_t graph_id);

/// Swap-in plus access to the materialized objects by graph position.
std::vector<ObjectHandle> swap_in_materialize(Runtime& rt, uint16_t graph_id);

/// Default action of the shared swap handler: swap the graph in and re-send
/// the trapped message to the materialized object.
Value marea_default_action(Runtime& rt, const Interception& interception);
Value marea_instance_action(Runtime& rt, const Interception& interception);

std::shared_ptr<HandlerSpec> make_marea_handler(Runtime& rt);

// ---- footprint reporting -----------------------------------------------------------

struct FootprintReport {
    uint64_t total_before = 0;
    uint64_t total_after = 0;
    uint64_t proxy_count = 0;
    int64_t bytes_saved = 0;
    double percent_saved = 0.0;

    std::string to_text() const;
    std::string to_json() const;
};

FootprintReport footprint_report(Runtime& rt, std::span<const ObjectHandle> before,
                                 std::span<const ObjectHandle> after);

bool is_swap_proxy(Runtime& rt, ObjectHandle h);

} // namespace ghost
