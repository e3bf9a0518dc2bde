#pragma once

#include <string>

#include "ghost/object_model.hpp"

namespace ghost {

/// Builds a class proxy (nil dictionary, MethodLookupInterceptionDelegator
/// superclass) and swaps it in for the class: instances' class references and
/// the global binding all reach the proxy afterwards.
ObjectHandle create_class_proxy_and_replace(Runtime& rt, ObjectHandle class_handle,
                                            ObjectHandle handler_object);

/// Class proxy without replacement.
ObjectHandle create_class_proxy_for(Runtime& rt, ObjectHandle class_handle,
                                    ObjectHandle handler_object);

/// First class in the chain from `start` whose method dictionary is nil;
/// a class proxy answers itself. Invalid handle when none is found.
ObjectHandle ghost_find_class_with_nil_dict(Runtime& rt, ObjectHandle start);

/// Instance-side action of the forwarder: looks the selector up starting at
/// the original class and executes the method directly on the receiver, so
/// no second interception occurs.
Value forwarder_instance_action(Runtime& rt, const Interception& interception);

/// Replaces a compiled method with a proxy; executions arrive as
/// run:with:in: interceptions routed to the handler's method-execution
/// action.
ObjectHandle create_method_proxy_and_replace(Runtime& rt, ObjectHandle class_handle,
                                             const std::string& selector,
                                             ObjectHandle handler_object);

/// Unpacks a run:with:in: interception and executes the proxied method on
/// the original receiver.
Value handle_method_execution(Runtime& rt, const Interception& interception);

} // namespace ghost
