#include "thimac/printer.hpp"

#include <sstream>

namespace thimac {

namespace {

std::string quote(const std::string& text) {
    return to_string(Literal{Literal::Kind::String, text});
}

class Printer {
public:
    explicit Printer(const StaticModel& model) : model_(model) {}

    std::string run(const std::vector<EventDecl>& events, const std::optional<Chronology>& chrono) {
        out_ << "model " << model_.name << " {\n";
        owned_declarations("", 1);
        for (const Thimac& root : model_.roots) thimac(root, 1);
        flows();
        for (const TriggerEdge& t : model_.triggers) trigger(t);
        for (const EventDecl& e : events) event(e);
        if (chrono) chronology(*chrono);
        out_ << "}\n";
        return out_.str();
    }

private:
    void indent(int level) {
        for (int i = 0; i < level; ++i) out_ << "  ";
    }

    void owned_declarations(const std::string& owner, int level) {
        std::vector<std::string> attr_names;
        for (const AttrDecl& a : model_.attrs) {
            if (a.owner_path == owner) attr_names.push_back(a.name);
        }
        if (!attr_names.empty()) {
            indent(level);
            out_ << "attr ";
            for (std::size_t i = 0; i < attr_names.size(); ++i)
                out_ << (i ? ", " : "") << attr_names[i];
            out_ << ";\n";
        }
        for (const CounterDecl& c : model_.counters) {
            if (c.owner_path != owner) continue;
            indent(level);
            out_ << "counter " << c.name << " = " << c.initial << ";\n";
        }
        if (const Thimac* t = owner.empty() ? nullptr : model_.find_thimac(owner)) {
            for (const Generator& g : t->generators) {
                indent(level);
                out_ << "generate " << g.attr << " = " << g.kind << "(";
                for (std::size_t i = 0; i < g.args.size(); ++i) out_ << (i ? ", " : "") << g.args[i];
                out_ << ");\n";
            }
        }
        for (const GuardDef& g : model_.guards) {
            if (g.owner_path != owner) continue;
            indent(level);
            out_ << "guard " << g.name << " = " << to_string(g.expr) << ";\n";
        }
    }

    void thimac(const Thimac& t, int level) {
        indent(level);
        out_ << "thimac " << t.name << " {\n";
        if (!t.stages.empty()) {
            indent(level + 1);
            out_ << "stages: ";
            for (std::size_t i = 0; i < t.stages.size(); ++i)
                out_ << (i ? ", " : "") << to_string(t.stages[i]);
            out_ << ";\n";
        }
        owned_declarations(t.path, level + 1);
        for (const Thimac& child : t.children) thimac(child, level + 1);
        indent(level);
        out_ << "}\n";
    }

    void flows() {
        const auto& fs = model_.flows;
        std::size_t i = 0;
        while (i < fs.size()) {
            indent(1);
            out_ << "flow " << fs[i].label << ": " << fs[i].from.str() << " -> " << fs[i].to.str();
            std::size_t j = i + 1;
            while (j < fs.size() && fs[j].label == fs[i].label && fs[j].from == fs[j - 1].to) {
                out_ << " -> " << fs[j].to.str();
                ++j;
            }
            out_ << ";\n";
            i = j;
        }
    }

    void trigger(const TriggerEdge& t) {
        indent(1);
        out_ << "trigger " << t.from.str() << " -> " << t.to.str();
        if (t.guard) out_ << " when " << to_string(*t.guard);
        if (!t.actions.empty()) {
            out_ << " do ";
            for (std::size_t i = 0; i < t.actions.size(); ++i)
                out_ << (i ? ", " : "") << to_string(t.actions[i]);
        }
        out_ << ";\n";
    }

    void event(const EventDecl& e) {
        indent(1);
        out_ << "event " << e.id << " " << quote(e.description) << " region { ";
        for (std::size_t i = 0; i < e.region.size(); ++i)
            out_ << (i ? ", " : "") << e.region[i].str();
        out_ << " }\n";
    }

    void chronology(const Chronology& c) {
        indent(1);
        out_ << "chronology {\n";
        for (const auto& [from, to] : c.edges) {
            indent(2);
            out_ << from << " -> " << to << ";\n";
        }
        indent(1);
        out_ << "}\n";
    }

    const StaticModel& model_;
    std::ostringstream out_;
};

}  // namespace

std::string print_canonical(const StaticModel& model, const std::vector<EventDecl>& events,
                            const std::optional<Chronology>& chronology) {
    return Printer(model).run(events, chronology);
}

}  // namespace thimac
