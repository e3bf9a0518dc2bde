#pragma once

#include <map>
#include <memory>
#include <string>

#include "ghost/object_model.hpp"

namespace ghost {

/// Trap machinery: the delegator class implementing cannotInterpret: and the
/// trap class whose dictionary stays nil forever.
struct TrapHierarchy {
    ObjectHandle delegator_class;
    ObjectHandle trap_class;
};

/// Installs the trap hierarchy plus the proxy classes built on it
/// (TargetBasedProxy, TargetBasedClassProxy, MareaProxy, CachedClassProxy)
/// and the handler classes. Errors on double installation.
TrapHierarchy install_trap_hierarchy(Runtime& rt);

/// Wraps a native handler spec as an in-world handler object.
ObjectHandle make_handler_object(Runtime& rt, std::shared_ptr<HandlerSpec> spec,
                                 ObjectHandle handler_class = ObjectHandle{});

std::shared_ptr<HandlerSpec> handler_spec_of(Runtime& rt, Value handler_object);

/// The reference forwarder: re-sends trapped messages to the proxy's target,
/// guarding against target leaks.
std::shared_ptr<HandlerSpec> make_forwarder_handler(Runtime& rt);
ObjectHandle make_forwarder_handler_object(Runtime& rt);

/// Proxy creation without replacement: nothing in the heap is updated.
ObjectHandle create_proxy_for(Runtime& rt, Value target, ObjectHandle handler_object);

/// Proxy creation with replacement: all prior references to the target now
/// reach the proxy; the proxy's target slot holds the original.
ObjectHandle create_proxy_and_replace(Runtime& rt, Value target, ObjectHandle handler_object);

/// Routes an interception: special-message table first, then the default
/// action.
Value handle_interception(Runtime& rt, HandlerSpec& handler, const Interception& interception);

Value forwarder_default_action(Runtime& rt, const Interception& interception);

/// The five-entry debugging table: selectors answered by the handler itself.
std::map<std::string, std::string> debugging_table();

void set_special_messages(Runtime& rt, Value handler_object,
                          std::map<std::string, std::string> table);

Value proxy_target(Runtime& rt, ObjectHandle proxy);
Value proxy_handler_object(Runtime& rt, ObjectHandle proxy);

/// Builds the native interception from an in-world Message object.
Interception interception_from_message(Runtime& rt, Value message_object, ObjectHandle proxy,
                                       Value receiver);

} // namespace ghost
