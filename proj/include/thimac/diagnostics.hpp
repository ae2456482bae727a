#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace thimac {

/// 1-based, inclusive source range. A default-constructed span (line 0)
/// marks an item that was built through the API rather than parsed.
struct SourceSpan {
    std::string file;
    int start_line = 0;
    int start_col = 0;
    int end_line = 0;
    int end_col = 0;

    [[nodiscard]] bool empty() const { return start_line == 0; }
};

enum class Severity { Error, Warning };

[[nodiscard]] const char* to_string(Severity severity);

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    SourceSpan span;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

class Diagnostics {
public:
    void error(std::string code, std::string message, SourceSpan span = {});
    void warning(std::string code, std::string message, SourceSpan span = {});
    void add(Diagnostic diagnostic) { items_.push_back(std::move(diagnostic)); }
    void append(const Diagnostics& other);

    [[nodiscard]] bool has_errors() const;
    [[nodiscard]] bool has_code(std::string_view code) const;
    [[nodiscard]] std::size_t count(std::string_view code) const;
    [[nodiscard]] bool empty() const { return items_.empty(); }
    [[nodiscard]] std::size_t size() const { return items_.size(); }

    [[nodiscard]] const std::vector<Diagnostic>& items() const { return items_; }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    /// Orders by (file, line, column, code, message). Used by every producer
    /// so that output is stable across runs.
    void sort();

private:
    std::vector<Diagnostic> items_;
};

/// `<file>:<line>:<col>: <severity> <code>: <message>`
[[nodiscard]] std::string format_diagnostic(const Diagnostic& diagnostic,
                                            std::string_view fallback_file = {});

/// Either a value or the diagnostic explaining why there is none.
template <typename T>
class Result {
public:
    Result(T value) : state_(std::move(value)) {}
    Result(Diagnostic error) : state_(std::move(error)) {}

    [[nodiscard]] bool ok() const { return std::holds_alternative<T>(state_); }
    explicit operator bool() const { return ok(); }

    [[nodiscard]] const T& value() const { return std::get<T>(state_); }
    [[nodiscard]] T& value() { return std::get<T>(state_); }
    [[nodiscard]] const Diagnostic& error() const { return std::get<Diagnostic>(state_); }

    const T& operator*() const { return value(); }
    const T* operator->() const { return &value(); }

private:
    std::variant<T, Diagnostic> state_;
};

}  // namespace thimac
