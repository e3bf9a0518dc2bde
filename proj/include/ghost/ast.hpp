#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ghost::script {

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

/// Expression node. One tagged struct keeps the printer, the structural
/// comparison and the evaluator compact.
struct Expr {
    enum class Type {
        int_literal,
        string_literal,
        symbol_literal,
        true_literal,
        false_literal,
        nil_literal,
        variable,   // name
        super_ref,  // only legal as a send receiver inside a method body
        assignment, // name := value
        unary_send,
        binary_send,
        keyword_send,
        block,    // [:p | |t| body]
        ret,      // ^ expr (method return; block-local return inside blocks)
        sequence, // statement list
    };

    Type type;
    int line = 0;
    int column = 0;

    int64_t int_value = 0;
    std::string text;     // string/symbol payload, variable name, selector
    ExprPtr receiver;     // sends, assignment value, return value
    std::vector<ExprPtr> arguments;
    std::vector<std::string> params; // block params
    std::vector<std::string> temps;  // block temps
    std::vector<ExprPtr> statements; // sequence / block body
};

ExprPtr make_expr(Expr::Type type, int line, int column);

/// Top-level script directive.
struct Directive {
    enum class Type {
        class_def,
        method_def,
        expression,
        assert_equal,
        assert_true,
        assert_trap_count,
    };

    Type type;
    int line = 0;
    int column = 0;

    // class_def
    std::string class_name;
    std::string super_name; // empty = rootless
    std::vector<std::string> slot_names;
    bool compact = false;

    // method_def
    bool class_side = false;
    std::string selector;
    std::vector<std::string> params;
    std::vector<std::string> temps;
    ExprPtr body;       // sequence
    std::string source; // verbatim text between chunk delimiters

    // expression / asserts
    ExprPtr expr_a;
    ExprPtr expr_b;
    int64_t expected_count = 0;
};

struct Program {
    std::vector<Directive> directives;
};

} // namespace ghost::script
