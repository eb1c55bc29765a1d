// SPDX-License-Identifier: Apache-2.0
#include "termcalc/proof.hpp"

#include <fstream>
#include <sstream>

#include "termcalc/errors.hpp"

namespace termcalc {

namespace {

struct RuleName {
    Rule rule;
    const char* name;
};

constexpr RuleName kRuleNames[] = {
    {Rule::Axiom, "Axiom"}, {Rule::D1, "D1"},   {Rule::D2, "D2"},   {Rule::D3, "D3"},
    {Rule::D4, "D4"},       {Rule::D4e, "D4e"}, {Rule::D4f, "D4f"}, {Rule::D5, "D5"},
    {Rule::D5e, "D5e"},     {Rule::D5f, "D5f"}, {Rule::SigmaR1, "SigmaR1"}, {Rule::H1, "H1"},
};

} // namespace

std::string rule_name(Rule r) {
    for (const auto& e : kRuleNames)
        if (e.rule == r) return e.name;
    return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
    for (const auto& e : kRuleNames)
        if (name == e.name) return e.rule;
    return std::nullopt;
}

std::string step_str(const ProofStep& step, int index) {
    std::ostringstream out;
    out << index << ": " << step.conclusion.str() << " ; " << rule_name(step.rule);
    if (!step.premises.empty()) {
        out << " premises=";
        for (std::size_t i = 0; i < step.premises.size(); ++i) {
            if (i) out << ',';
            out << step.premises[i] + 1;
        }
    }
    if (step.var) out << " var=x" << *step.var;
    if (step.term) out << " term=" << step.term->str();
    if (step.pos) out << " pos=" << step.pos->str();
    if (step.hyper_text) out << " hyper=" << *step.hyper_text;
    return out.str();
}

const Identity& Proof::conclusion() const {
    if (steps.empty()) throw ValidationError("empty proof has no conclusion");
    return steps.back().conclusion;
}

std::string Proof::str() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < steps.size(); ++i) out << step_str(steps[i], static_cast<int>(i) + 1) << '\n';
    return out.str();
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

} // namespace

Proof Proof::parse(const std::string& text) {
    Proof proof;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("proof line needs '<index>: <identity> ; <rule> ...'", lineno);
        int index = 0;
        try {
            index = std::stoi(line.substr(first, colon - first));
        } catch (const std::exception&) {
            throw ParseError("proof line has a non-numeric index", lineno);
        }
        if (index != static_cast<int>(proof.steps.size()) + 1)
            throw ParseError("proof steps must be numbered 1,2,... in order; got " + std::to_string(index),
                             lineno);

        std::size_t semi = line.find(';', colon + 1);
        if (semi == std::string::npos) throw ParseError("proof line is missing '; <rule>'", lineno);

        Identity conclusion{Term::var(1), Term::var(1)};
        try {
            conclusion = parse_identity(line.substr(colon + 1, semi - colon - 1));
        } catch (const ParseError& e) {
            throw ParseError(std::string("bad identity in proof step: ") + e.what(), lineno);
        }
        ProofStep step{conclusion, Rule::D1, {}, {}, {}, {}, {}};

        std::vector<std::string> toks = split_ws(line.substr(semi + 1));
        if (toks.empty()) throw ParseError("proof line is missing the rule name", lineno);
        auto rule = rule_from_name(toks[0]);
        if (!rule) throw ParseError("unknown rule '" + toks[0] + "'", lineno);
        step.rule = *rule;

        for (std::size_t i = 1; i < toks.size(); ++i) {
            std::size_t eq = toks[i].find('=');
            if (eq == std::string::npos)
                throw ParseError("expected key=value, got '" + toks[i] + "'", lineno);
            std::string key = toks[i].substr(0, eq);
            std::string value = toks[i].substr(eq + 1);
            try {
                if (key == "premises") {
                    std::istringstream ps(value);
                    std::string one;
                    while (std::getline(ps, one, ',')) {
                        int p = std::stoi(one);
                        if (p < 1 || p > static_cast<int>(proof.steps.size()))
                            throw ParseError("premise " + one + " does not refer to an earlier step");
                        step.premises.push_back(p - 1);
                    }
                } else if (key == "var") {
                    if (value.size() < 2 || value[0] != 'x')
                        throw ParseError("var must look like x1");
                    step.var = std::stoi(value.substr(1));
                } else if (key == "term") {
                    step.term = parse_term(value);
                } else if (key == "pos") {
                    step.pos = Position::parse(value);
                } else if (key == "hyper") {
                    // No signature in scope; kept as text until checked.
                    step.hyper_text = value;
                } else {
                    throw ParseError("unknown key '" + key + "'");
                }
            } catch (const ParseError& e) {
                throw ParseError(std::string(e.what()), lineno);
            } catch (const std::exception& e) {
                throw ParseError("bad value for '" + key + "': " + e.what(), lineno);
            }
        }
        proof.steps.push_back(std::move(step));
    }
    if (proof.steps.empty()) throw ParseError("proof has no steps");
    return proof;
}

Proof Proof::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open proof file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

} // namespace termcalc
