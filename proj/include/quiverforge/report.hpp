#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace quiverforge {

/// One verified identity: name, both sides printed, verdict.
struct CheckLine {
    std::string name;
    std::string lhs;
    std::string rhs;
    bool ok = false;
};

struct CheckReport {
    std::string title;
    std::vector<CheckLine> lines;

    bool pass() const {
        for (const auto& l : lines)
            if (!l.ok) return false;
        return true;
    }

    void add(const std::string& name, const std::string& lhs, const std::string& rhs,
             bool ok) {
        lines.push_back(CheckLine{name, lhs, rhs, ok});
    }

    template <typename T>
    void add_eq(const std::string& name, const T& lhs, const T& rhs) {
        std::ostringstream l, r;
        l << lhs;
        r << rhs;
        lines.push_back(CheckLine{name, l.str(), r.str(), lhs == rhs});
    }

    std::string str() const {
        std::ostringstream os;
        os << title << "\n";
        for (const auto& l : lines)
            os << "  " << (l.ok ? "pass" : "FAIL") << "  " << l.name << ": " << l.lhs
               << (l.ok ? " == " : " != ") << l.rhs << "\n";
        os << (pass() ? "  => all checks pass" : "  => FAILURES present") << "\n";
        return os.str();
    }
};

}  // namespace quiverforge
