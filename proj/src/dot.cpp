#include "thimac/dot.hpp"

#include <sstream>

namespace thimac {

namespace {

std::string quoted(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    out += '"';
    return out;
}

bool plain_id(std::string_view text) {
    if (text.empty() || (text[0] >= '0' && text[0] <= '9')) return false;
    for (char c : text) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

class DotWriter {
public:
    DotWriter(const StaticModel& model, const std::vector<EventDecl>& events,
              const RenderOptions& options)
        : model_(model), events_(events), options_(options) {
        for (const EventDecl& e : events_) {
            if (!options_.highlight.count(e.id)) continue;
            for (const StageRef& ref : e.region) bold_.insert(ref.str());
        }
    }

    std::string run() {
        out_ << "digraph " << (plain_id(model_.name) ? model_.name : quoted(model_.name))
             << " {\n";
        out_ << "  graph [rankdir=" << (options_.rankdir == RankDir::LR ? "LR" : "TB")
             << ", compound=true, fontname=\"Helvetica\"];\n";
        out_ << "  node [shape=circle, fontname=\"Helvetica\", fontsize=10];\n";
        out_ << "  edge [fontname=\"Helvetica\", fontsize=9];\n";
        counters("", 1);
        for (const Thimac& root : model_.roots) cluster(root, 1);
        for (const FlowEdge& f : model_.flows) {
            out_ << "  " << quoted(f.from.str()) << " -> " << quoted(f.to.str())
                 << " [style=solid, label=" << quoted(f.label) << "];\n";
        }
        for (const TriggerEdge& t : model_.triggers) {
            out_ << "  " << quoted(t.from.str()) << " -> " << quoted(t.to.str())
                 << " [style=dashed";
            if (t.guard) out_ << ", label=" << quoted(to_string(*t.guard));
            out_ << "];\n";
        }
        if (options_.show_events) {
            for (const EventDecl& e : events_) {
                std::string about = e.description;
                for (char& c : about) {
                    if (c == '\n') c = ' ';
                }
                out_ << "  // event " << e.id << ": " << about << "\n";
                for (const StageRef& ref : e.region) out_ << "  //   " << ref.str() << "\n";
            }
        }
        out_ << "}\n";
        return out_.str();
    }

private:
    void indent(int level) {
        for (int i = 0; i < level; ++i) out_ << "  ";
    }

    void counters(const std::string& owner, int level) {
        for (const CounterDecl& c : model_.counters) {
            if (c.owner_path != owner) continue;
            indent(level);
            out_ << quoted("counter:" + c.name) << " [shape=note, label="
                 << quoted(c.name + " = " + std::to_string(c.initial)) << "];\n";
        }
    }

    void cluster(const Thimac& t, int level) {
        indent(level);
        out_ << "subgraph " << quoted("cluster_" + t.path) << " {\n";
        indent(level + 1);
        out_ << "label=" << quoted(t.name) << ";\n";
        for (StageKind kind : t.stages) {
            const std::string path = StageRef{t.path, kind}.str();
            indent(level + 1);
            out_ << quoted(path) << " [label=" << quoted(to_string(kind));
            if (bold_.count(path)) out_ << ", style=bold";
            out_ << "];\n";
        }
        counters(t.path, level + 1);
        for (const Thimac& child : t.children) cluster(child, level + 1);
        indent(level);
        out_ << "}\n";
    }

    const StaticModel& model_;
    const std::vector<EventDecl>& events_;
    const RenderOptions& options_;
    std::set<std::string> bold_;
    std::ostringstream out_;
};

}  // namespace

Result<std::string> to_dot(const StaticModel& model, const std::vector<EventDecl>& events,
                           const RenderOptions& options) {
    if (!options.highlight.empty() && !options.show_events) {
        return Diagnostic{Severity::Error, "R002", "highlighting events requires showing events", {}};
    }
    for (const std::string& id : options.highlight) {
        bool known = false;
        for (const EventDecl& e : events) known = known || e.id == id;
        if (!known) return Diagnostic{Severity::Error, "R001", "unknown event '" + id + "'", {}};
    }
    return DotWriter(model, events, options).run();
}

}  // namespace thimac
