#pragma once

#include <string>
#include <vector>

#include "ghost/object_model.hpp"

namespace ghost {

struct LookupOutcome {
    enum class Kind { found, nil_dictionary, not_found };

    Kind kind = Kind::not_found;
    ObjectHandle defining_class;  // found
    Value entry;                  // found: dictionary value
    MethodMeta* method = nullptr; // found: null for foreign entries
    ObjectHandle trapping_class;  // nil_dictionary: first class with a nil dict
};

/// Walks the superclass chain from `start_class`. Answers nil_dictionary at
/// the first class whose dictionary slot is nil, found on the first match,
/// not_found when the chain ends. A cyclic chain is a fatal error.
LookupOutcome lookup(Runtime& rt, const std::string& selector, ObjectHandle start_class);

/// Full message send: identity bypass, lookup, activation, objects-as-methods
/// and both trap paths.
Value send(Runtime& rt, Value receiver, const std::string& selector, std::vector<Value> args);

/// Send with an explicit lookup start (super sends).
Value send_from(Runtime& rt, Value receiver, const std::string& selector,
                std::vector<Value> args, ObjectHandle start_class);

/// Activates a method on a receiver with no lookup and no traps.
Value execute_method(Runtime& rt, Value method, Value receiver, std::vector<Value> args);

/// Handler-facing alias of execute_method.
Value value_with_receiver(Runtime& rt, Value method, Value receiver, std::vector<Value> args);

/// Builds an in-world Message instance (selector, arguments, lookupClass).
Value make_message_object(Runtime& rt, const std::string& selector,
                          const std::vector<Value>& args, Value lookup_class);

/// Installs a doesNotUnderstand: override on a class; the comparison baseline
/// for error-handling proxies.
void install_dnu_baseline(Runtime& rt, ObjectHandle class_handle, ObjectHandle method);

int selector_arity(const std::string& selector);

} // namespace ghost
