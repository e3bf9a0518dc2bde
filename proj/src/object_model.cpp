#include "ghost/object_model.hpp"

#include <algorithm>

#include "ghost/swapper.hpp"

namespace ghost {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::lex: return "lex";
    case ErrorKind::parse: return "parse";
    case ErrorKind::unbound_variable: return "unbound-variable";
    case ErrorKind::does_not_understand: return "does-not-understand";
    case ErrorKind::invalid_activation: return "invalid-activation";
    case ErrorKind::refused_become: return "refused-become";
    case ErrorKind::encoding: return "encoding";
    case ErrorKind::swap_fault: return "swap-fault";
    case ErrorKind::handler_config: return "handler-config";
    case ErrorKind::compact_budget: return "compact-budget";
    case ErrorKind::duplicate_name: return "duplicate-name";
    case ErrorKind::slot_range: return "slot-range";
    case ErrorKind::arity: return "arity";
    case ErrorKind::primitive_failed: return "primitive-failed";
    case ErrorKind::not_wrapped: return "not-wrapped";
    case ErrorKind::assertion: return "assertion";
    case ErrorKind::fatal: return "fatal";
    }
    return "unknown";
}

const char* send_outcome_name(SendOutcome outcome) {
    switch (outcome) {
    case SendOutcome::executed: return "executed";
    case SendOutcome::primitive: return "primitive";
    case SendOutcome::trapped_ci: return "trapped-CI";
    case SendOutcome::trapped_dnu: return "trapped-DNU";
    case SendOutcome::identity_bypass: return "identity-bypass";
    }
    return "unknown";
}

Runtime::~Runtime() = default;

HeapObject& Runtime::obj(ObjectHandle h) {
    if (!h.valid() || h.index >= table_.size())
        raise(ErrorKind::fatal, "invalid object handle");
    return table_[h.index];
}

const HeapObject& Runtime::obj(ObjectHandle h) const {
    if (!h.valid() || h.index >= table_.size())
        raise(ErrorKind::fatal, "invalid object handle");
    return table_[h.index];
}

size_t Runtime::live_object_count() const {
    size_t n = 0;
    for (const auto& o : table_)
        if (!o.dead) ++n;
    return n;
}

void Runtime::check_alive(ObjectHandle h, const char* what) const {
    if (obj(h).dead)
        raise(ErrorKind::fatal, std::string(what) + ": object was swapped out");
}

ObjectHandle Runtime::allocate_slotted(Value class_ref, size_t slot_count) {
    HeapObject o;
    o.class_ref = class_ref;
    o.slots.assign(slot_count, Value::nil());
    table_.push_back(std::move(o));
    return ObjectHandle{static_cast<uint32_t>(table_.size() - 1)};
}

ObjectHandle Runtime::allocate_bytes(Value class_ref, std::string bytes) {
    HeapObject o;
    o.class_ref = class_ref;
    o.byte_indexed = true;
    o.bytes = std::move(bytes);
    table_.push_back(std::move(o));
    return ObjectHandle{static_cast<uint32_t>(table_.size() - 1)};
}

ObjectHandle Runtime::make_dictionary() {
    ObjectHandle h = allocate_slotted(Value::ref(wk.method_dict_cls), 0);
    obj(h).dict_meta = std::make_unique<DictMeta>();
    return h;
}

ObjectHandle Runtime::make_metaclass(const std::string& class_name, Value super_meta) {
    ObjectHandle meta = allocate_slotted(Value::ref(wk.class_cls), 2);
    obj(meta).slots[0] = super_meta;
    obj(meta).slots[1] = Value::ref(make_dictionary());
    obj(meta).class_meta = std::make_unique<ClassMeta>();
    obj(meta).class_meta->name = class_name + " class";
    return meta;
}

ObjectHandle Runtime::define_class(const std::string& name, Value superclass,
                                   const std::vector<std::string>& slot_names, bool compact) {
    if (has_global(name))
        raise(ErrorKind::duplicate_name, "name already bound: " + name);
    if (superclass.is_integer())
        raise(ErrorKind::primitive_failed, "superclass must be a class or nil");
    if (superclass.is_reference() && !is_class_with_meta(superclass))
        raise(ErrorKind::primitive_failed, "superclass is not class-shaped: " + name);
    std::set<std::string> seen;
    for (const auto& s : slot_names)
        if (!seen.insert(s).second)
            raise(ErrorKind::duplicate_name, "duplicate slot name: " + s);

    int compact_index = 0;
    if (compact) {
        if (compact_in_use_ >= 31)
            raise(ErrorKind::compact_budget, "compact-class table full (31 indices in use)");
        compact_index = ++compact_in_use_;
    }

    Value super_meta = superclass.is_reference()
                           ? obj(superclass.as_reference()).class_ref
                           : Value::ref(wk.class_cls);
    ObjectHandle meta = make_metaclass(name, super_meta);

    ObjectHandle cls = allocate_slotted(Value::ref(meta), 2);
    obj(cls).slots[0] = superclass;
    obj(cls).slots[1] = Value::ref(make_dictionary());
    obj(cls).class_meta = std::make_unique<ClassMeta>();
    obj(cls).class_meta->name = name;
    obj(cls).class_meta->slot_names = slot_names;
    obj(cls).class_meta->compact = compact;
    obj(cls).class_meta->compact_index = compact_index;

    bind_global(name, Value::ref(cls));
    return cls;
}

ObjectHandle Runtime::instantiate(ObjectHandle class_handle) {
    const HeapObject& cls = obj(class_handle);
    if (!cls.class_meta || !is_class_shaped(Value::ref(class_handle)))
        raise(ErrorKind::primitive_failed, "instantiate: argument is not class-shaped");
    size_t n = cumulative_layout(class_handle).size();
    return allocate_slotted(Value::ref(class_handle), n);
}

bool Runtime::is_class_shaped(Value v) const {
    if (!v.is_reference()) return false;
    const HeapObject& o = obj(v.as_reference());
    if (o.dead || o.byte_indexed || o.slots.size() < 2) return false;
    const Value& super = o.slots[0];
    const Value& dict = o.slots[1];
    return (super.is_nil() || super.is_reference()) && (dict.is_nil() || dict.is_reference());
}

bool Runtime::is_class_with_meta(Value v) const {
    return is_class_shaped(v) && obj(v.as_reference()).class_meta != nullptr;
}

std::vector<std::string> Runtime::cumulative_layout(ObjectHandle class_handle) const {
    std::vector<ObjectHandle> chain;
    Value cur = Value::ref(class_handle);
    std::set<uint32_t> visited;
    while (cur.is_reference()) {
        ObjectHandle h = cur.as_reference();
        if (!visited.insert(h.index).second)
            raise(ErrorKind::fatal, "class chain cycle while computing layout");
        chain.push_back(h);
        const HeapObject& o = obj(h);
        if (!o.class_meta || o.slots.size() < 2) break;
        cur = o.slots[0];
    }
    std::vector<std::string> layout;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        const HeapObject& o = obj(*it);
        if (o.class_meta)
            layout.insert(layout.end(), o.class_meta->slot_names.begin(),
                          o.class_meta->slot_names.end());
    }
    return layout;
}

std::string Runtime::class_name_of(ObjectHandle class_handle) const {
    const HeapObject& o = obj(class_handle);
    if (o.class_meta) return o.class_meta->name;
    if (is_class_shaped(Value::ref(class_handle))) return "<classProxy>";
    return "<object>";
}

std::string Runtime::class_name_for_trace(Value receiver) const {
    return class_name_of(class_handle_of(receiver));
}

ObjectHandle Runtime::class_handle_of(Value v) const {
    switch (v.kind()) {
    case Value::Kind::integer: return wk.smallint_cls;
    case Value::Kind::nil: return wk.undefined_cls;
    case Value::Kind::reference: {
        const Value& c = obj(v.as_reference()).class_ref;
        if (!c.is_reference())
            raise(ErrorKind::fatal, "object has no class reference");
        return c.as_reference();
    }
    }
    raise(ErrorKind::fatal, "unreachable");
}

Value Runtime::slot_read(Value object, int index) const {
    if (object.is_integer())
        raise(ErrorKind::slot_range, "immediate integers have no slots");
    if (object.is_nil())
        raise(ErrorKind::slot_range, "nil has no slots");
    const HeapObject& o = obj(object.as_reference());
    if (o.dead)
        raise(ErrorKind::fatal, "slot_read: object was swapped out");
    if (o.byte_indexed || index < 0 || static_cast<size_t>(index) >= o.slots.size())
        raise(ErrorKind::slot_range, "slot index out of range: " + std::to_string(index));
    return o.slots[index];
}

void Runtime::slot_write(Value object, int index, Value value) {
    if (object.is_integer())
        raise(ErrorKind::slot_range, "immediate integers have no slots");
    if (object.is_nil())
        raise(ErrorKind::slot_range, "nil has no slots");
    HeapObject& o = obj(object.as_reference());
    if (o.dead)
        raise(ErrorKind::fatal, "slot_write: object was swapped out");
    if (o.byte_indexed || index < 0 || static_cast<size_t>(index) >= o.slots.size())
        raise(ErrorKind::slot_range, "slot index out of range: " + std::to_string(index));
    o.slots[index] = value;
}

namespace {

void rewrite_sites(std::deque<HeapObject>& table, const Value& from, const Value& to,
                   bool two_way) {
    for (auto& o : table) {
        if (o.dead) continue;
        if (o.class_ref == from)
            o.class_ref = to;
        else if (two_way && o.class_ref == to)
            o.class_ref = from;
        for (auto& s : o.slots) {
            if (s == from)
                s = to;
            else if (two_way && s == to)
                s = from;
        }
    }
}

} // namespace

void Runtime::become(Value a, Value b) {
    if (!a.is_reference() || !b.is_reference())
        raise(ErrorKind::refused_become, "become: operand is immediate or nil");
    check_alive(a.as_reference(), "become");
    check_alive(b.as_reference(), "become");
    if (obj(a.as_reference()).become_refusing || obj(b.as_reference()).become_refusing)
        raise(ErrorKind::refused_become, "become: operand is a designated special object");
    if (a == b) return;
    // Atomic under the single-owner contract: nothing observes a partial
    // rewrite.
    rewrite_sites(table_, a, b, /*two_way=*/true);
}

void Runtime::become_forward(Value a, Value b) {
    if (!a.is_reference() || !b.is_reference())
        raise(ErrorKind::refused_become, "becomeForward: operand is immediate or nil");
    check_alive(a.as_reference(), "becomeForward");
    check_alive(b.as_reference(), "becomeForward");
    if (obj(a.as_reference()).become_refusing || obj(b.as_reference()).become_refusing)
        raise(ErrorKind::refused_become, "becomeForward: operand is a designated special object");
    if (a == b) return;
    rewrite_sites(table_, a, b, /*two_way=*/false);
}

std::vector<RefSite> Runtime::references_to(Value v) const {
    std::vector<RefSite> out;
    if (!v.is_reference()) return out;
    for (uint32_t i = 0; i < table_.size(); ++i) {
        const HeapObject& o = table_[i];
        if (o.dead) continue;
        if (o.class_ref == v)
            out.push_back(RefSite{ObjectHandle{i}, RefSite::class_ref_slot});
        for (size_t s = 0; s < o.slots.size(); ++s)
            if (o.slots[s] == v)
                out.push_back(RefSite{ObjectHandle{i}, static_cast<int32_t>(s)});
    }
    return out;
}

uint64_t Runtime::footprint_of(Value v) const {
    if (!v.is_reference()) return 0;
    const HeapObject& o = obj(v.as_reference());
    if (o.dead) return 0;
    uint64_t body = o.byte_indexed ? o.bytes.size() : o.slots.size() * FootprintModel::slot_size;
    bool compact = false;
    if (o.class_ref.is_reference()) {
        const HeapObject& cls = obj(o.class_ref.as_reference());
        if (cls.class_meta) compact = cls.class_meta->compact;
    }
    return FootprintModel::header_bytes(compact, body) + body;
}

uint64_t Runtime::footprint_total(std::span<const ObjectHandle> objects) const {
    uint64_t total = 0;
    for (ObjectHandle h : objects)
        total += footprint_of(Value::ref(h));
    return total;
}

uint64_t Runtime::live_footprint_total() const {
    uint64_t total = 0;
    for (uint32_t i = 0; i < table_.size(); ++i)
        if (!table_[i].dead)
            total += footprint_of(Value::ref(ObjectHandle{i}));
    return total;
}

ObjectHandle Runtime::intern(const std::string& name) {
    auto it = symbols_.find(name);
    if (it != symbols_.end()) return it->second;
    ObjectHandle h = allocate_bytes(Value::ref(wk.symbol_cls), name);
    symbols_.emplace(name, h);
    return h;
}

const std::string& Runtime::symbol_name(ObjectHandle symbol) const {
    const HeapObject& o = obj(symbol);
    if (!o.byte_indexed)
        raise(ErrorKind::primitive_failed, "not a symbol");
    return o.bytes;
}

ObjectHandle Runtime::make_string(const std::string& text) {
    return allocate_bytes(Value::ref(wk.string_cls), text);
}

ObjectHandle Runtime::make_array(const std::vector<Value>& elements) {
    ObjectHandle h = allocate_slotted(Value::ref(wk.array_cls), elements.size());
    HeapObject& o = obj(h);
    for (size_t i = 0; i < elements.size(); ++i)
        o.slots[i] = elements[i];
    return h;
}

bool Runtime::has_global(const std::string& name) const {
    return global_index_.contains(name);
}

Value Runtime::global(const std::string& name) const {
    auto it = global_index_.find(name);
    if (it == global_index_.end())
        raise(ErrorKind::unbound_variable, "unbound global: " + name);
    return obj(wk.globals_obj).slots[it->second];
}

void Runtime::bind_global(const std::string& name, Value value) {
    auto it = global_index_.find(name);
    if (it != global_index_.end()) {
        obj(wk.globals_obj).slots[it->second] = value;
        return;
    }
    HeapObject& g = obj(wk.globals_obj);
    global_index_.emplace(name, static_cast<int>(g.slots.size()));
    global_names_.push_back(name);
    g.slots.push_back(value);
}

std::optional<std::string> Runtime::global_name_of(Value value) const {
    const HeapObject& g = obj(wk.globals_obj);
    for (size_t i = 0; i < g.slots.size(); ++i)
        if (g.slots[i] == value)
            return global_names_[i];
    return std::nullopt;
}

ObjectHandle Runtime::method_dictionary_of(ObjectHandle class_handle) const {
    const HeapObject& cls = obj(class_handle);
    if (cls.slots.size() < 2 || !cls.slots[1].is_reference())
        return ObjectHandle{};
    return cls.slots[1].as_reference();
}

void Runtime::add_method(ObjectHandle class_handle, const std::string& selector,
                         ObjectHandle method) {
    ObjectHandle dict = method_dictionary_of(class_handle);
    if (!dict.valid())
        raise(ErrorKind::primitive_failed,
              "cannot add method to a class with a nil method dictionary");
    HeapObject& d = obj(dict);
    if (!d.dict_meta)
        raise(ErrorKind::fatal, "method dictionary object lacks its selector map");
    auto it = d.dict_meta->slot_of.find(selector);
    if (it != d.dict_meta->slot_of.end()) {
        d.slots[it->second] = Value::ref(method);
        return;
    }
    d.dict_meta->slot_of.emplace(selector, static_cast<int>(d.slots.size()));
    d.slots.push_back(Value::ref(method));
}

Value Runtime::method_at(ObjectHandle class_handle, const std::string& selector) const {
    ObjectHandle dict = method_dictionary_of(class_handle);
    if (!dict.valid()) return Value::nil();
    const HeapObject& d = obj(dict);
    if (!d.dict_meta) return Value::nil();
    auto it = d.dict_meta->slot_of.find(selector);
    if (it == d.dict_meta->slot_of.end()) return Value::nil();
    return d.slots[it->second];
}

ObjectHandle Runtime::make_primitive_method(const std::string& selector, int arity,
                                            const std::string& tag) {
    ObjectHandle h = allocate_slotted(Value::ref(wk.compiled_method_cls), 0);
    auto meta = std::make_unique<MethodMeta>();
    meta->kind = MethodMeta::Kind::primitive;
    meta->selector = selector;
    meta->arity = arity;
    meta->primitive_tag = tag;
    meta->source = "<primitive: " + tag + ">";
    obj(h).method_meta = std::move(meta);
    return h;
}

ObjectHandle Runtime::make_compiled_method(MethodMeta meta) {
    ObjectHandle h = allocate_slotted(Value::ref(wk.compiled_method_cls), 0);
    meta.kind = MethodMeta::Kind::compiled;
    obj(h).method_meta = std::make_unique<MethodMeta>(std::move(meta));
    return h;
}

bool Runtime::is_true(const Value& v) const {
    if (v.is_reference() && v.as_reference() == wk.true_obj) return true;
    if (v.is_reference() && v.as_reference() == wk.false_obj) return false;
    raise(ErrorKind::primitive_failed, "expected a boolean, got " + display_string(v));
}

bool Runtime::is_boolean(const Value& v) const {
    return v.is_reference() &&
           (v.as_reference() == wk.true_obj || v.as_reference() == wk.false_obj);
}

std::string Runtime::display_string(const Value& v) const {
    switch (v.kind()) {
    case Value::Kind::nil: return "nil";
    case Value::Kind::integer: return std::to_string(v.as_integer());
    case Value::Kind::reference: break;
    }
    ObjectHandle h = v.as_reference();
    if (h == wk.true_obj) return "true";
    if (h == wk.false_obj) return "false";
    const HeapObject& o = obj(h);
    if (o.dead) return "<swapped #" + std::to_string(h.index) + ">";
    if (o.byte_indexed) {
        if (o.class_ref == Value::ref(wk.symbol_cls)) return "#" + o.bytes;
        return "'" + o.bytes + "'";
    }
    if (o.class_meta) return "<class " + o.class_meta->name + ">";
    std::string cls = class_name_for_trace(v);
    return "a " + cls + " (#" + std::to_string(h.index) + ")";
}

} // namespace ghost
