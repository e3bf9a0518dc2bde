#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ghost/ast.hpp"
#include "ghost/errors.hpp"
#include "ghost/handlers.hpp"
#include "ghost/value.hpp"

namespace ghost {

class Runtime;
struct Env;
class SegmentStore;

using PrimitiveFn = std::function<Value(Runtime&, Value, std::vector<Value>&)>;

/// Out-of-band class description. Instance layout lives here, not in slots;
/// the dispatcher only ever reads slots 0 (superclass) and 1 (method
/// dictionary).
struct ClassMeta {
    std::string name;
    std::vector<std::string> slot_names; // own slots, parents excluded
    bool compact = false;
    int compact_index = 0; // 1..31 when compact
};

struct MethodMeta {
    enum class Kind { primitive, compiled };

    Kind kind = Kind::primitive;
    std::string selector;
    int arity = 0;
    std::string primitive_tag; // key into Runtime::primitives
    std::vector<std::string> params;
    std::vector<std::string> temps;
    script::ExprPtr body;
    std::string source;
    ObjectHandle defining_class;
    std::map<std::string, int> ivar_index; // resolved at definition time
    std::set<std::string> sent_selectors;
};

struct BlockMeta {
    std::vector<std::string> params;
    std::vector<std::string> temps;
    std::vector<script::ExprPtr> body;
    std::shared_ptr<Env> captured;
    Value home_self;
    ObjectHandle defining_class; // for ivar access inside blocks
};

struct DictMeta {
    std::map<std::string, int> slot_of; // selector -> slot in the dictionary object
};

struct HeapObject {
    Value class_ref;
    std::vector<Value> slots;
    std::string bytes; // byte-indexed payload
    bool byte_indexed = false;
    bool become_refusing = false;
    bool dead = false; // tombstone left behind by swap-out

    std::unique_ptr<ClassMeta> class_meta;
    std::unique_ptr<MethodMeta> method_meta;
    std::unique_ptr<BlockMeta> block_meta;
    std::unique_ptr<DictMeta> dict_meta;
    std::shared_ptr<HandlerSpec> handler;
};

/// 32-bit memory model used by all footprint accounting.
struct FootprintModel {
    static constexpr uint64_t slot_size = 4;
    static constexpr uint64_t regular_header_small = 8;
    static constexpr uint64_t regular_header_large = 12;
    static constexpr uint64_t compact_header_small = 4;
    static constexpr uint64_t compact_header_large = 8;
    static constexpr uint64_t large_body_threshold = 255;

    static uint64_t header_bytes(bool compact, uint64_t body_bytes) {
        if (body_bytes > large_body_threshold)
            return compact ? compact_header_large : regular_header_large;
        return compact ? compact_header_small : regular_header_small;
    }
};

enum class SendOutcome { executed, primitive, trapped_ci, trapped_dnu, identity_bypass };

const char* send_outcome_name(SendOutcome outcome);

struct SendRecord {
    uint64_t ordinal;
    int depth;
    std::string receiver_class;
    std::string selector;
    SendOutcome outcome;
};

struct InterceptionRecord {
    uint64_t ordinal;
    uint32_t proxy;
    std::string selector;
    std::string action; // forwarded | special:<name> | instance | methodExec
};

struct WrapRecord {
    uint64_t ordinal;
    std::string phase; // pre | post
    std::string selector;
    int depth;
};

struct LogRecord {
    uint64_t ordinal;
    std::string text;
};

using TraceRecord = std::variant<SendRecord, InterceptionRecord, WrapRecord, LogRecord>;

struct Trace {
    std::vector<TraceRecord> records;
    uint64_t next_ordinal = 0;

    uint64_t send_count = 0;
    uint64_t interception_count = 0;
    uint64_t swap_in_count = 0;
    uint64_t swap_out_count = 0;
    uint64_t proxies_created = 0;

    uint64_t ordinal() { return next_ordinal++; }

    void send(int depth, std::string receiver_class, std::string selector, SendOutcome outcome) {
        ++send_count;
        records.push_back(
            SendRecord{ordinal(), depth, std::move(receiver_class), std::move(selector), outcome});
    }
    void interception(uint32_t proxy, std::string selector, std::string action) {
        ++interception_count;
        records.push_back(
            InterceptionRecord{ordinal(), proxy, std::move(selector), std::move(action)});
    }
    void wrap(std::string phase, std::string selector, int depth) {
        records.push_back(WrapRecord{ordinal(), std::move(phase), std::move(selector), depth});
    }
    void log(std::string text) { records.push_back(LogRecord{ordinal(), std::move(text)}); }
};

struct RetainedMeta {
    std::unique_ptr<ClassMeta> class_meta;
    std::unique_ptr<MethodMeta> method_meta;
    std::unique_ptr<BlockMeta> block_meta;
    std::shared_ptr<HandlerSpec> handler;
};

struct GraphLedger {
    uint16_t graph_id = 0;
    uint32_t member_count = 0;
    uint32_t proxy_count = 0;
    uint64_t member_bytes = 0;
    uint64_t proxy_bytes = 0;
    bool retired = false;
};

class Runtime {
public:
    Runtime();
    ~Runtime();
    Runtime(const Runtime&) = delete;
    Runtime& operator=(const Runtime&) = delete;

    // ---- table access -----------------------------------------------------
    HeapObject& obj(ObjectHandle h);
    const HeapObject& obj(ObjectHandle h) const;
    size_t table_size() const { return table_.size(); }
    size_t live_object_count() const;
    ObjectHandle allocate_slotted(Value class_ref, size_t slot_count);
    ObjectHandle allocate_bytes(Value class_ref, std::string bytes);

    // ---- classes ----------------------------------------------------------
    ObjectHandle define_class(const std::string& name, Value superclass,
                              const std::vector<std::string>& slot_names, bool compact);
    ObjectHandle instantiate(ObjectHandle class_handle);
    bool is_class_shaped(Value v) const;   // honors the slot-0/slot-1 contract
    bool is_class_with_meta(Value v) const;
    std::vector<std::string> cumulative_layout(ObjectHandle class_handle) const;
    std::string class_name_of(ObjectHandle class_handle) const;
    std::string class_name_for_trace(Value receiver) const;
    ObjectHandle class_handle_of(Value v) const;
    Value class_of(Value v) const { return Value::ref(class_handle_of(v)); }
    int compact_classes_in_use() const { return compact_in_use_; }

    // ---- slots ------------------------------------------------------------
    Value slot_read(Value object, int index) const;
    void slot_write(Value object, int index, Value value);

    // ---- identity & swapping ----------------------------------------------
    void become(Value a, Value b);
    void become_forward(Value a, Value b);
    std::vector<RefSite> references_to(Value v) const;

    // ---- footprint ----------------------------------------------------------
    uint64_t footprint_of(Value v) const;
    uint64_t footprint_total(std::span<const ObjectHandle> objects) const;
    uint64_t live_footprint_total() const;

    // ---- symbols, strings, globals ------------------------------------------
    ObjectHandle intern(const std::string& name);
    const std::string& symbol_name(ObjectHandle symbol) const;
    ObjectHandle make_string(const std::string& text);
    ObjectHandle make_array(const std::vector<Value>& elements);

    bool has_global(const std::string& name) const;
    Value global(const std::string& name) const;
    void bind_global(const std::string& name, Value value);
    ObjectHandle globals_object() const { return wk.globals_obj; }
    std::optional<std::string> global_name_of(Value value) const;

    // ---- methods -------------------------------------------------------------
    ObjectHandle method_dictionary_of(ObjectHandle class_handle) const; // invalid if nil
    void add_method(ObjectHandle class_handle, const std::string& selector, ObjectHandle method);
    Value method_at(ObjectHandle class_handle, const std::string& selector) const; // nil if absent
    ObjectHandle make_primitive_method(const std::string& selector, int arity,
                                       const std::string& tag);
    ObjectHandle make_compiled_method(MethodMeta meta);

    // ---- misc helpers ----------------------------------------------------------
    Value make_bool(bool b) const {
        return Value::ref(b ? wk.true_obj : wk.false_obj);
    }
    bool is_true(const Value& v) const;
    bool is_boolean(const Value& v) const;
    std::string display_string(const Value& v) const;

    struct WellKnown {
        ObjectHandle object_cls, undefined_cls, true_cls, false_cls, smallint_cls, string_cls,
            symbol_cls, array_cls, block_cls, message_cls, compiled_method_cls, class_cls,
            method_dict_cls, namespace_cls, transcript_cls, facade_cls;
        ObjectHandle true_obj, false_obj, transcript_obj, facade_obj, globals_obj;
    };

    WellKnown wk{};
    std::map<std::string, PrimitiveFn> primitives;
    Trace trace;

    struct Kernel {
        bool installed = false;
        ObjectHandle delegator, trap_cls, tbp_cls, mlid, tbcp_cls, marea_cls, cached_cls,
            forwarder_cls, handler_cls;
        ObjectHandle marea_handler_obj;
    };
    Kernel kernel{};

    struct SwapState {
        std::unique_ptr<SegmentStore> store;
        uint16_t next_graph_id = 0;
        std::map<uint16_t, std::map<uint32_t, RetainedMeta>> retention;
        std::vector<GraphLedger> ledger;
    };
    SwapState swap;

    struct WrapEntry {
        ObjectHandle proxy;
        ObjectHandle original;
        std::shared_ptr<HandlerSpec> handler;
    };
    std::map<std::pair<uint32_t, std::string>, WrapEntry> wrapped;
    std::map<std::pair<std::string, std::string>, uint64_t> wrap_counts;
    int wrap_depth = 0;

    int send_depth = 0;
    uint64_t seed = 0;

private:
    friend void boot_world(Runtime& rt);

    ObjectHandle make_metaclass(const std::string& class_name, Value super_meta);
    ObjectHandle make_dictionary();
    void check_alive(ObjectHandle h, const char* what) const;

    std::deque<HeapObject> table_;
    std::map<std::string, ObjectHandle> symbols_;
    std::map<std::string, int> global_index_;
    std::vector<std::string> global_names_;
    int compact_in_use_ = 0;
};

} // namespace ghost
