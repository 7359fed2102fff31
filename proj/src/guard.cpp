#include "routeprobe/guard.hpp"

#include <cctype>
#include <utility>

#include "routeprobe/detail/text.hpp"
#include "routeprobe/errors.hpp"

namespace routeprobe {

struct GuardExpr::Node {
    Kind kind;
    bool value = false;       // Constant
    std::string region;       // InRegion
    std::shared_ptr<const Node> lhs;  // Not (operand), And/Or
    std::shared_ptr<const Node> rhs;  // And/Or
};

GuardExpr GuardExpr::constant(bool value) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Constant;
    node->value = value;
    return GuardExpr(std::move(node));
}

GuardExpr GuardExpr::in_region(std::string region) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::InRegion;
    node->region = std::move(region);
    return GuardExpr(std::move(node));
}

GuardExpr GuardExpr::negation(GuardExpr operand) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Not;
    node->lhs = std::move(operand.node_);
    return GuardExpr(std::move(node));
}

GuardExpr GuardExpr::conjunction(GuardExpr lhs, GuardExpr rhs) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::And;
    node->lhs = std::move(lhs.node_);
    node->rhs = std::move(rhs.node_);
    return GuardExpr(std::move(node));
}

GuardExpr GuardExpr::disjunction(GuardExpr lhs, GuardExpr rhs) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Or;
    node->lhs = std::move(lhs.node_);
    node->rhs = std::move(rhs.node_);
    return GuardExpr(std::move(node));
}

GuardExpr::Kind GuardExpr::kind() const noexcept { return node_->kind; }

namespace {

void collect_regions(const GuardExpr::Node* node,
                     std::vector<std::string>& out);

}  // namespace

std::vector<std::string> GuardExpr::region_names() const {
    std::vector<std::string> names;
    collect_regions(node_.get(), names);
    return names;
}

void GuardExpr::bind(const RegionSet& rs) const {
    for (const std::string& name : region_names()) {
        if (!rs.index_of(name)) {
            throw ValidationError("guard references unknown region '" + name +
                                  "'");
        }
    }
}

namespace {

void collect_regions(const GuardExpr::Node* node,
                     std::vector<std::string>& out) {
    switch (node->kind) {
        case GuardExpr::Kind::Constant:
            return;
        case GuardExpr::Kind::InRegion:
            for (const std::string& seen : out) {
                if (seen == node->region) return;
            }
            out.push_back(node->region);
            return;
        case GuardExpr::Kind::Not:
            collect_regions(node->lhs.get(), out);
            return;
        case GuardExpr::Kind::And:
        case GuardExpr::Kind::Or:
            collect_regions(node->lhs.get(), out);
            collect_regions(node->rhs.get(), out);
            return;
    }
}

bool eval_point(const GuardExpr::Node* node, const GeoPoint& p,
                const RegionSet& rs) {
    switch (node->kind) {
        case GuardExpr::Kind::Constant:
            return node->value;
        case GuardExpr::Kind::InRegion: {
            const Region* region = rs.find(node->region);
            if (region == nullptr) {
                throw ValidationError("guard references unknown region '" +
                                      node->region + "'");
            }
            return contains(*region, p);
        }
        case GuardExpr::Kind::Not:
            return !eval_point(node->lhs.get(), p, rs);
        case GuardExpr::Kind::And:
            return eval_point(node->lhs.get(), p, rs) &&
                   eval_point(node->rhs.get(), p, rs);
        case GuardExpr::Kind::Or:
            return eval_point(node->lhs.get(), p, rs) ||
                   eval_point(node->rhs.get(), p, rs);
    }
    return false;
}

bool eval_cell(const GuardExpr::Node* node, std::size_t cell,
               const RegionSet& rs) {
    switch (node->kind) {
        case GuardExpr::Kind::Constant:
            return node->value;
        case GuardExpr::Kind::InRegion: {
            auto idx = rs.index_of(node->region);
            if (!idx) {
                throw ValidationError("guard references unknown region '" +
                                      node->region + "'");
            }
            return cell == *idx;
        }
        case GuardExpr::Kind::Not:
            return !eval_cell(node->lhs.get(), cell, rs);
        case GuardExpr::Kind::And:
            return eval_cell(node->lhs.get(), cell, rs) &&
                   eval_cell(node->rhs.get(), cell, rs);
        case GuardExpr::Kind::Or:
            return eval_cell(node->lhs.get(), cell, rs) ||
                   eval_cell(node->rhs.get(), cell, rs);
    }
    return false;
}

void print(const GuardExpr::Node* node, std::string& out) {
    switch (node->kind) {
        case GuardExpr::Kind::Constant:
            out += node->value ? "true" : "false";
            return;
        case GuardExpr::Kind::InRegion:
            out += "in(";
            out += node->region;
            out += ')';
            return;
        case GuardExpr::Kind::Not: {
            out += '!';
            const bool parens = node->lhs->kind == GuardExpr::Kind::And ||
                                node->lhs->kind == GuardExpr::Kind::Or;
            if (parens) out += '(';
            print(node->lhs.get(), out);
            if (parens) out += ')';
            return;
        }
        case GuardExpr::Kind::And: {
            auto operand = [&](const GuardExpr::Node* n) {
                const bool parens = n->kind == GuardExpr::Kind::Or;
                if (parens) out += '(';
                print(n, out);
                if (parens) out += ')';
            };
            operand(node->lhs.get());
            out += " && ";
            operand(node->rhs.get());
            return;
        }
        case GuardExpr::Kind::Or:
            print(node->lhs.get(), out);
            out += " || ";
            print(node->rhs.get(), out);
            return;
    }
}

}  // namespace

bool GuardExpr::evaluate(const GeoPoint& p, const RegionSet& rs) const {
    return eval_point(node_.get(), p, rs);
}

bool GuardExpr::evaluate_cell(std::size_t cell, const RegionSet& rs) const {
    return eval_cell(node_.get(), cell, rs);
}

std::string GuardExpr::to_string() const {
    std::string out;
    print(node_.get(), out);
    return out;
}

bool evaluate_guard(const GuardExpr& guard, const GeoPoint& p,
                    const RegionSet& rs) {
    return guard.evaluate(p, rs);
}

std::vector<bool> guard_truth_table(const GuardExpr& guard,
                                    const RegionSet& rs) {
    std::vector<bool> table(rs.size() + 1);
    for (std::size_t cell = 0; cell <= rs.size(); ++cell) {
        table[cell] = guard.evaluate_cell(cell, rs);
    }
    return table;
}

namespace {

// Recursive-descent parser; grammar layers give || < && < ! binding.
class GuardParser {
public:
    GuardParser(std::string_view text, std::string_view source_name,
                std::size_t line)
        : text_(text), source_(source_name), line_(line) {}

    GuardExpr parse() {
        GuardExpr expr = parse_or();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input '" +
                 std::string(text_.substr(pos_)) + "'");
        }
        return expr;
    }

private:
    GuardExpr parse_or() {
        GuardExpr lhs = parse_and();
        while (match("||")) {
            lhs = GuardExpr::disjunction(std::move(lhs), parse_and());
        }
        return lhs;
    }

    GuardExpr parse_and() {
        GuardExpr lhs = parse_unary();
        while (match("&&")) {
            lhs = GuardExpr::conjunction(std::move(lhs), parse_unary());
        }
        return lhs;
    }

    GuardExpr parse_unary() {
        skip_space();
        if (match("!")) {
            return GuardExpr::negation(parse_unary());
        }
        if (match("(")) {
            GuardExpr inner = parse_or();
            expect(")");
            return inner;
        }
        if (match_word("true")) return GuardExpr::constant(true);
        if (match_word("false")) return GuardExpr::constant(false);
        if (match_word("in")) {
            expect("(");
            skip_space();
            std::string name;
            if (peek() == '"') {
                ++pos_;
                std::size_t end = text_.find('"', pos_);
                if (end == std::string_view::npos) {
                    fail("unterminated region name quote");
                }
                name = std::string(text_.substr(pos_, end - pos_));
                pos_ = end + 1;
            } else {
                std::size_t start = pos_;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                        text_[pos_] == '_')) {
                    ++pos_;
                }
                name = std::string(text_.substr(start, pos_ - start));
            }
            if (name.empty()) {
                fail("expected a region name inside in(...)");
            }
            expect(")");
            return GuardExpr::in_region(std::move(name));
        }
        fail(pos_ < text_.size()
                 ? "unexpected character '" + std::string(1, text_[pos_]) + "'"
                 : std::string("unexpected end of guard expression"));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool match(std::string_view token) {
        skip_space();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    // Keyword match that does not consume a prefix of a longer identifier.
    bool match_word(std::string_view word) {
        skip_space();
        if (text_.substr(pos_, word.size()) != word) return false;
        std::size_t after = pos_ + word.size();
        if (after < text_.size() &&
            (std::isalnum(static_cast<unsigned char>(text_[after])) ||
             text_[after] == '_')) {
            return false;
        }
        pos_ = after;
        return true;
    }

    void expect(std::string_view token) {
        if (!match(token)) {
            fail("expected '" + std::string(token) + "'");
        }
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(std::string(source_), line_,
                         "guard column " + std::to_string(pos_ + 1) + ": " +
                             message);
    }

    std::string_view text_;
    std::string_view source_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

}  // namespace

GuardExpr parse_guard(std::string_view text, std::string_view source_name,
                      std::size_t line) {
    return GuardParser(text, source_name, line).parse();
}

}  // namespace routeprobe
