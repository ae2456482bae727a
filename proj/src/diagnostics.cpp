#include "thimac/diagnostics.hpp"

#include <algorithm>
#include <tuple>

namespace thimac {

const char* to_string(Severity severity) {
    return severity == Severity::Error ? "error" : "warning";
}

void Diagnostics::error(std::string code, std::string message, SourceSpan span) {
    items_.push_back({Severity::Error, std::move(code), std::move(message), std::move(span)});
}

void Diagnostics::warning(std::string code, std::string message, SourceSpan span) {
    items_.push_back({Severity::Warning, std::move(code), std::move(message), std::move(span)});
}

void Diagnostics::append(const Diagnostics& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

bool Diagnostics::has_errors() const {
    return std::any_of(items_.begin(), items_.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

bool Diagnostics::has_code(std::string_view code) const { return count(code) > 0; }

std::size_t Diagnostics::count(std::string_view code) const {
    return static_cast<std::size_t>(std::count_if(
        items_.begin(), items_.end(), [&](const Diagnostic& d) { return d.code == code; }));
}

void Diagnostics::sort() {
    std::stable_sort(items_.begin(), items_.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.span.file, a.span.start_line, a.span.start_col, a.code, a.message) <
               std::tie(b.span.file, b.span.start_line, b.span.start_col, b.code, b.message);
    });
}

std::string format_diagnostic(const Diagnostic& d, std::string_view fallback_file) {
    std::string out = d.span.file.empty() ? std::string(fallback_file) : d.span.file;
    out += ':';
    out += std::to_string(d.span.start_line);
    out += ':';
    out += std::to_string(d.span.start_col);
    out += ": ";
    out += to_string(d.severity);
    out += ' ';
    out += d.code;
    out += ": ";
    out += d.message;
    return out;
}

}  // namespace thimac
