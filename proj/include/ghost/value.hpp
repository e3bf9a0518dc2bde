#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace ghost {

/// Index of an object's slot in the runtime's object table. Handles stay
/// bound to their payload across `become`; the stored references are what
/// move.
struct ObjectHandle {
    static constexpr uint32_t invalid_index = 0xffffffffu;

    uint32_t index = invalid_index;

    bool valid() const { return index != invalid_index; }
    friend bool operator==(ObjectHandle, ObjectHandle) = default;
    friend auto operator<=>(ObjectHandle, ObjectHandle) = default;
};

/// A slot value: nil, an immediate integer (no heap presence), or a
/// reference into the object table.
class Value {
public:
    enum class Kind : uint8_t { nil, integer, reference };

    Value() = default;

    static Value nil() { return Value(); }
    static Value integer(int64_t v) {
        Value out;
        out.kind_ = Kind::integer;
        out.int_ = v;
        return out;
    }
    static Value ref(ObjectHandle h) {
        Value out;
        out.kind_ = Kind::reference;
        out.ref_ = h;
        return out;
    }

    Kind kind() const { return kind_; }
    bool is_nil() const { return kind_ == Kind::nil; }
    bool is_integer() const { return kind_ == Kind::integer; }
    bool is_reference() const { return kind_ == Kind::reference; }

    int64_t as_integer() const { return int_; }
    ObjectHandle as_reference() const { return ref_; }

    friend bool operator==(const Value& a, const Value& b) {
        if (a.kind_ != b.kind_) return false;
        switch (a.kind_) {
        case Kind::nil: return true;
        case Kind::integer: return a.int_ == b.int_;
        case Kind::reference: return a.ref_ == b.ref_;
        }
        return false;
    }

private:
    Kind kind_ = Kind::nil;
    int64_t int_ = 0;
    ObjectHandle ref_{};
};

/// Same table slot, or equal immediate integers, or both nil.
inline bool identical(const Value& a, const Value& b) { return a == b; }

/// One position that holds a reference: a numbered slot, or the class
/// reference position (slot == class_ref_slot).
struct RefSite {
    static constexpr int32_t class_ref_slot = -1;

    ObjectHandle holder;
    int32_t slot = 0;

    friend bool operator==(const RefSite&, const RefSite&) = default;
    friend auto operator<=>(const RefSite&, const RefSite&) = default;
};

} // namespace ghost
