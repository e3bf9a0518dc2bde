#include "ghost/dispatch.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "ghost/interpreter.hpp"

namespace ghost {

namespace {

constexpr const char* kIdentitySelector = "==";
constexpr const char* kCannotInterpret = "cannotInterpret:";
constexpr const char* kDoesNotUnderstand = "doesNotUnderstand:";
constexpr int kMaxSendDepth = 512;

struct DepthGuard {
    Runtime& rt;
    explicit DepthGuard(Runtime& r) : rt(r) {
        if (++rt.send_depth > kMaxSendDepth)
            raise(ErrorKind::fatal, "send depth limit exceeded");
    }
    ~DepthGuard() { --rt.send_depth; }
};

std::string chain_dump(Runtime& rt, ObjectHandle start) {
    std::string out;
    Value cur = Value::ref(start);
    int hops = 0;
    while (cur.is_reference() && hops++ < 32) {
        out += rt.class_name_of(cur.as_reference());
        cur = rt.obj(cur.as_reference()).slots.size() >= 2 ? rt.obj(cur.as_reference()).slots[0]
                                                           : Value::nil();
        if (cur.is_reference()) out += " -> ";
    }
    return out;
}

Value activate(Runtime& rt, MethodMeta& meta, Value receiver, std::vector<Value>& args) {
    if (static_cast<int>(args.size()) != meta.arity)
        raise(ErrorKind::arity, meta.selector + ": expected " + std::to_string(meta.arity) +
                                    " arguments, got " + std::to_string(args.size()));
    if (meta.kind == MethodMeta::Kind::primitive) {
        auto it = rt.primitives.find(meta.primitive_tag);
        if (it == rt.primitives.end())
            raise(ErrorKind::fatal, "unregistered primitive: " + meta.primitive_tag);
        return it->second(rt, receiver, args);
    }
    return activate_compiled(rt, meta, receiver, args);
}

Value deliver_trap(Runtime& rt, Value receiver, Value message_object, ObjectHandle lookup_start,
                   const std::string& trap_selector);

/// Core send once a lookup start is known. The reification's lookup class is
/// always the class where lookup started.
Value dispatch(Runtime& rt, Value receiver, const std::string& selector, std::vector<Value>& args,
               ObjectHandle start_class) {
    DepthGuard guard(rt);

    if (selector == kIdentitySelector) {
        if (args.size() != 1)
            raise(ErrorKind::arity, "== expects exactly one argument");
        rt.trace.send(rt.send_depth, rt.class_name_for_trace(receiver), selector,
                      SendOutcome::identity_bypass);
        return rt.make_bool(identical(receiver, args[0]));
    }

    if (selector_arity(selector) != static_cast<int>(args.size()))
        raise(ErrorKind::arity, selector + ": argument count does not match keyword count");

    LookupOutcome outcome = lookup(rt, selector, start_class);
    switch (outcome.kind) {
    case LookupOutcome::Kind::found: {
        if (outcome.method) {
            rt.trace.send(rt.send_depth, rt.class_name_for_trace(receiver), selector,
                          outcome.method->kind == MethodMeta::Kind::primitive
                              ? SendOutcome::primitive
                              : SendOutcome::executed);
            return activate(rt, *outcome.method, receiver, args);
        }
        // Objects as methods: the dictionary entry is not a method, so it
        // receives run:with:in: instead of being activated.
        rt.trace.send(rt.send_depth, rt.class_name_for_trace(receiver), selector,
                      SendOutcome::executed);
        std::vector<Value> run_args{Value::ref(rt.intern(selector)),
                                    Value::ref(rt.make_array(args)), receiver};
        return send(rt, outcome.entry, "run:with:in:", std::move(run_args));
    }
    case LookupOutcome::Kind::nil_dictionary: {
        rt.trace.send(rt.send_depth, rt.class_name_for_trace(receiver), selector,
                      SendOutcome::trapped_ci);
        Value message =
            make_message_object(rt, selector, args, Value::ref(start_class));
        const HeapObject& trapping = rt.obj(outcome.trapping_class);
        Value above = trapping.slots.size() >= 1 ? trapping.slots[0] : Value::nil();
        if (!above.is_reference())
            raise(ErrorKind::fatal,
                  "unhandled trap: no superclass above the nil method dictionary (chain: " +
                      chain_dump(rt, start_class) + ")");
        return deliver_trap(rt, receiver, message, above.as_reference(), kCannotInterpret);
    }
    case LookupOutcome::Kind::not_found: {
        rt.trace.send(rt.send_depth, rt.class_name_for_trace(receiver), selector,
                      SendOutcome::trapped_dnu);
        Value message =
            make_message_object(rt, selector, args, Value::ref(start_class));
        return deliver_trap(rt, receiver, message, start_class, kDoesNotUnderstand);
    }
    }
    raise(ErrorKind::fatal, "unreachable dispatch outcome");
}

Value deliver_trap(Runtime& rt, Value receiver, Value message_object, ObjectHandle lookup_start,
                   const std::string& trap_selector) {
    LookupOutcome outcome = lookup(rt, trap_selector, lookup_start);
    if (outcome.kind != LookupOutcome::Kind::found || !outcome.method)
        raise(ErrorKind::fatal, "unhandled trap: " + trap_selector +
                                    " not reachable from " + rt.class_name_of(lookup_start) +
                                    " (chain: " + chain_dump(rt, lookup_start) + ")");
    std::vector<Value> args{message_object};
    return activate(rt, *outcome.method, receiver, args);
}

} // namespace

int selector_arity(const std::string& selector) {
    if (selector.empty()) return 0;
    long colons = std::count(selector.begin(), selector.end(), ':');
    if (colons > 0) return static_cast<int>(colons);
    // Binary selectors are runs of operator characters.
    if (!(std::isalpha(static_cast<unsigned char>(selector[0])) || selector[0] == '_')) return 1;
    return 0;
}

LookupOutcome lookup(Runtime& rt, const std::string& selector, ObjectHandle start_class) {
    Value cur = Value::ref(start_class);
    std::set<uint32_t> visited;
    while (cur.is_reference()) {
        ObjectHandle cls = cur.as_reference();
        if (!visited.insert(cls.index).second)
            raise(ErrorKind::fatal,
                  "malformed class chain (cycle): " + chain_dump(rt, start_class));
        const HeapObject& o = rt.obj(cls);
        if (o.dead)
            raise(ErrorKind::fatal, "lookup reached a swapped-out class");
        if (o.byte_indexed || o.slots.size() < 2)
            raise(ErrorKind::fatal, "lookup reached a non-class object (chain: " +
                                        chain_dump(rt, start_class) + ")");
        if (o.slots[1].is_nil()) {
            LookupOutcome out;
            out.kind = LookupOutcome::Kind::nil_dictionary;
            out.trapping_class = cls;
            return out;
        }
        Value entry = rt.method_at(cls, selector);
        if (!entry.is_nil()) {
            LookupOutcome out;
            out.kind = LookupOutcome::Kind::found;
            out.defining_class = cls;
            out.entry = entry;
            if (entry.is_reference()) {
                HeapObject& m = rt.obj(entry.as_reference());
                out.method = m.method_meta.get();
            }
            return out;
        }
        cur = o.slots[0];
    }
    return LookupOutcome{};
}

Value send(Runtime& rt, Value receiver, const std::string& selector, std::vector<Value> args) {
    return dispatch(rt, receiver, selector, args, rt.class_handle_of(receiver));
}

Value send_from(Runtime& rt, Value receiver, const std::string& selector, std::vector<Value> args,
                ObjectHandle start_class) {
    return dispatch(rt, receiver, selector, args, start_class);
}

Value execute_method(Runtime& rt, Value method, Value receiver, std::vector<Value> args) {
    if (!method.is_reference())
        raise(ErrorKind::invalid_activation, "cannot execute a non-method entry");
    MethodMeta* meta = rt.obj(method.as_reference()).method_meta.get();
    if (!meta)
        raise(ErrorKind::invalid_activation,
              "cannot execute a foreign dictionary entry as a method");
    return activate(rt, *meta, receiver, args);
}

Value value_with_receiver(Runtime& rt, Value method, Value receiver, std::vector<Value> args) {
    return execute_method(rt, method, receiver, std::move(args));
}

Value make_message_object(Runtime& rt, const std::string& selector,
                          const std::vector<Value>& args, Value lookup_class) {
    ObjectHandle msg = rt.instantiate(rt.wk.message_cls);
    HeapObject& m = rt.obj(msg);
    m.slots[0] = Value::ref(rt.intern(selector));
    m.slots[1] = Value::ref(rt.make_array(args));
    m.slots[2] = lookup_class;
    return Value::ref(msg);
}

void install_dnu_baseline(Runtime& rt, ObjectHandle class_handle, ObjectHandle method) {
    const MethodMeta* meta = rt.obj(method).method_meta.get();
    if (!meta || meta->arity != 1)
        raise(ErrorKind::invalid_activation,
              "doesNotUnderstand: override must be a one-argument method");
    rt.add_method(class_handle, kDoesNotUnderstand, method);
}

} // namespace ghost
