#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ghost/value.hpp"

namespace ghost {

class Runtime;

/// Reified trapped message handed to handlers. For regular-object proxies
/// the receiver is the proxy itself; for instance traps through a class
/// proxy the receiver is the instance and `proxy` is the class proxy.
struct Interception {
    std::string selector;
    std::vector<Value> arguments;
    Value lookup_class;
    ObjectHandle proxy;
    Value receiver;
    Value message_object; // the in-world Message instance
};

/// Pluggable handler: a default action, optional actions for instance traps
/// and method execution, and a mutable special-message table mapping
/// intercepted selectors to named handler operations.
struct HandlerSpec {
    using Action = std::function<Value(Runtime&, const Interception&)>;

    Action default_action;
    Action instance_action;
    Action method_execution_action;
    std::map<std::string, std::string> special_messages; // selector -> operation name
    std::map<std::string, Action> operations;            // operation name -> action
    std::string label;
};

} // namespace ghost
