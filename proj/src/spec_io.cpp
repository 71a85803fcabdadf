#include "chipfire/spec_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace chipfire {

ParseError::ParseError(int line, int column, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

std::string to_string(SpecKind k) {
    switch (k) {
        case SpecKind::Banana: return "banana";
        case SpecKind::Theta: return "theta";
        case SpecKind::Cycle: return "cycle";
        case SpecKind::Graph: return "graph";
        case SpecKind::Chain: return "chain";
    }
    return "?";
}

namespace {

struct Token {
    std::string text;
    int column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != '#' && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    return out;
}

template <class Int>
std::optional<Int> to_int(std::string_view s) {
    Int v{};
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

int expect_int(const Token& t, int line, int min) {
    auto v = to_int<int>(t.text);
    if (!v) throw ParseError(line, t.column, "expected an integer, got '" + t.text + "'");
    if (*v < min) throw ParseError(line, t.column, "value must be at least " + std::to_string(min));
    return *v;
}

// "name:int" or "name".
std::pair<std::string, long long> divisor_term(const Token& t, int line) {
    const auto colon = t.text.rfind(':');
    if (colon == std::string::npos) return {t.text, 1};
    auto v = to_int<long long>(std::string_view(t.text).substr(colon + 1));
    if (colon == 0 || !v)
        throw ParseError(line, t.column, "malformed divisor term '" + t.text + "'");
    return {t.text.substr(0, colon), *v};
}

std::optional<SpecKind> kind_of(const std::string& s) {
    if (s == "banana") return SpecKind::Banana;
    if (s == "theta") return SpecKind::Theta;
    if (s == "cycle") return SpecKind::Cycle;
    if (s == "graph") return SpecKind::Graph;
    if (s == "chain") return SpecKind::Chain;
    return std::nullopt;
}

SpecDocument header(const std::vector<Token>& tok, std::size_t at, int line, bool nested) {
    SpecDocument d;
    d.header = {line, tok[at].column};
    auto k = kind_of(tok[at].text);
    if (!k) throw ParseError(line, tok[at].column, "unknown graph kind '" + tok[at].text + "'");
    if (nested && *k == SpecKind::Chain) throw ParseError(line, tok[at].column, "chains do not nest");
    d.kind = *k;
    for (std::size_t i = at + 1; i < tok.size(); ++i) d.lengths.push_back(expect_int(tok[i], line, 1));
    const auto n = d.lengths.size();
    const int end = tok.back().column + static_cast<int>(tok.back().text.size());
    switch (d.kind) {
        case SpecKind::Banana:
            if (n < 2) throw ParseError(line, end, "banana needs at least two strand lengths");
            break;
        case SpecKind::Theta:
            if (n != 3) throw ParseError(line, end, "theta takes exactly three lengths");
            break;
        case SpecKind::Cycle:
            if (n != 2) throw ParseError(line, end, "cycle takes exactly two arc lengths");
            break;
        case SpecKind::Graph:
        case SpecKind::Chain:
            if (n != 0) throw ParseError(line, tok[at + 1].column, "unexpected argument");
            break;
    }
    return d;
}

void set_mark(SpecDocument& d, const std::vector<Token>& tok, int line) {
    if (tok.size() != 3) throw ParseError(line, tok[0].column, "expected 'mark u <vertex>' or 'mark v <vertex>'");
    auto& slot = tok[1].text == "u" ? d.mark_u : tok[1].text == "v" ? d.mark_v : d.mark_u;
    if (tok[1].text != "u" && tok[1].text != "v")
        throw ParseError(line, tok[1].column, "mark must be 'u' or 'v'");
    if (slot) throw ParseError(line, tok[0].column, "duplicate mark " + tok[1].text);
    slot = Located{tok[2].text, {line, tok[2].column}};
}

}  // namespace

SpecDocument parse_spec(std::string_view text) {
    std::optional<SpecDocument> doc;
    std::map<std::size_t, int> bridges;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto tok = tokenize(raw);
        if (tok.empty()) continue;
        const std::string& kw = tok[0].text;
        if (!doc) {
            doc = header(tok, 0, line, false);
            continue;
        }
        SpecDocument& top = *doc;
        const bool chain = top.kind == SpecKind::Chain;
        if (chain && kw == "component") {
            if (tok.size() < 2) throw ParseError(line, tok[0].column, "component needs a graph kind");
            top.components.push_back(header(tok, 1, line, true));
            continue;
        }
        if (chain && kw == "bridge") {
            if (tok.size() != 2) throw ParseError(line, tok[0].column, "expected 'bridge <edges>'");
            if (top.components.empty()) throw ParseError(line, tok[0].column, "bridge before any component");
            bridges[top.components.size() - 1] = expect_int(tok[1], line, 0);
            continue;
        }
        if (kw == "divisor") {
            for (std::size_t i = 1; i < tok.size(); ++i) {
                auto [name, c] = divisor_term(tok[i], line);
                top.divisor.push_back({Located{name, {line, tok[i].column}}, c});
            }
            continue;
        }
        SpecDocument* cur = &top;
        if (chain) {
            if (top.components.empty()) throw ParseError(line, tok[0].column, "'" + kw + "' before any component");
            cur = &top.components.back();
        }
        if (kw == "mark") {
            set_mark(*cur, tok, line);
        } else if (kw == "vertex" && cur->kind == SpecKind::Graph) {
            if (tok.size() < 2) throw ParseError(line, tok[0].column, "vertex needs at least one name");
            for (std::size_t i = 1; i < tok.size(); ++i) cur->vertices.push_back(tok[i].text);
        } else if (kw == "edge" && cur->kind == SpecKind::Graph) {
            if (tok.size() != 3 && tok.size() != 4)
                throw ParseError(line, tok[0].column, "expected 'edge <a> <b> [multiplicity]'");
            const int mult = tok.size() == 4 ? expect_int(tok[3], line, 1) : 1;
            for (int m = 0; m < mult; ++m)
                cur->edges.push_back({Located{tok[1].text, {line, tok[1].column}}, Located{tok[2].text, {line, tok[2].column}}});
        } else {
            throw ParseError(line, tok[0].column, "unexpected '" + kw + "' in a " + to_string(cur->kind) + " spec");
        }
    }
    if (!doc) throw ParseError(line + 1, 1, "empty spec");
    if (doc->kind == SpecKind::Chain) {
        if (doc->components.empty()) throw ParseError(doc->header.line, doc->header.column, "chain has no components");
        for (const auto& [i, n] : bridges)
            if (i + 1 >= doc->components.size())
                throw ParseError(doc->header.line, doc->header.column, "bridge after the last component");
        doc->bridges.assign(doc->components.size() - 1, 0);
        for (const auto& [i, n] : bridges) doc->bridges[i] = n;
    }
    return *doc;
}

namespace {

void serialize_body(const SpecDocument& d, std::ostringstream& out) {
    if (d.kind == SpecKind::Graph) {
        if (!d.vertices.empty()) {
            out << "vertex";
            for (const auto& v : d.vertices) out << ' ' << v;
            out << '\n';
        }
        for (const auto& [a, b] : d.edges) out << "edge " << a.text << ' ' << b.text << '\n';
    }
    if (d.mark_u) out << "mark u " << d.mark_u->text << '\n';
    if (d.mark_v) out << "mark v " << d.mark_v->text << '\n';
}

std::string header_text(const SpecDocument& d) {
    std::string s = to_string(d.kind);
    for (int n : d.lengths) s += " " + std::to_string(n);
    return s;
}

}  // namespace

std::string serialize(const SpecDocument& d) {
    std::ostringstream out;
    out << header_text(d) << '\n';
    if (d.kind == SpecKind::Chain) {
        for (std::size_t i = 0; i < d.components.size(); ++i) {
            out << "component " << header_text(d.components[i]) << '\n';
            serialize_body(d.components[i], out);
            if (i < d.bridges.size() && d.bridges[i] != 0) out << "bridge " << d.bridges[i] << '\n';
        }
    } else {
        serialize_body(d, out);
    }
    if (!d.divisor.empty()) {
        out << "divisor";
        for (const auto& [name, c] : d.divisor) out << ' ' << name.text << ':' << c;
        out << '\n';
    }
    return out.str();
}

namespace {

Vertex resolve(const Graph& g, const Located& name) {
    if (auto v = g.find(name.text)) return *v;
    throw ParseError(name.pos.line, name.pos.column, "unknown vertex '" + name.text + "'");
}

Graph build(const SpecDocument& d) {
    try {
        switch (d.kind) {
            case SpecKind::Banana:
            case SpecKind::Theta:
            case SpecKind::Cycle: return build_banana(d.lengths);
            case SpecKind::Graph: {
                std::map<std::string, int> seen;
                for (const auto& v : d.vertices) seen[v] = 1;
                std::vector<std::pair<std::string, std::string>> edges;
                for (const auto& [a, b] : d.edges) {
                    for (const Located* x : {&a, &b})
                        if (!seen.count(x->text))
                            throw ParseError(x->pos.line, x->pos.column, "unknown vertex '" + x->text + "'");
                    edges.emplace_back(a.text, b.text);
                }
                return build_general(d.vertices, edges);
            }
            case SpecKind::Chain: break;
        }
    } catch (const GraphError& e) {
        throw ParseError(d.header.line, d.header.column, e.what());
    }
    throw ParseError(d.header.line, d.header.column, "chain cannot be built directly");
}

std::optional<MarkedGraph> marks(const SpecDocument& d, const Graph& g) {
    std::optional<Vertex> u, v;
    if (d.mark_u) u = resolve(g, *d.mark_u);
    if (d.mark_v) v = resolve(g, *d.mark_v);
    if (d.kind == SpecKind::Cycle) {
        if (!u) u = g.left();
        if (!v) v = g.right();
    }
    if (!u || !v) return std::nullopt;
    return MarkedGraph{g, *u, *v};
}

}  // namespace

LoadedSpec load_spec(std::string_view text) {
    LoadedSpec out;
    out.doc = parse_spec(text);
    const SpecDocument& d = out.doc;
    if (d.kind == SpecKind::Chain) {
        ChainSpec chain;
        for (const auto& c : d.components) {
            auto mg = marks(c, build(c));
            if (!mg) throw ParseError(c.header.line, c.header.column, "chain component needs both marks");
            chain.components.push_back(std::move(*mg));
        }
        chain.bridges = d.bridges;
        try {
            Gluing glued = glue_chain(chain.components, chain.bridges);
            out.graph = glued.glued.graph;
            out.marked = std::move(glued.glued);
        } catch (const GraphError& e) {
            throw ParseError(d.header.line, d.header.column, e.what());
        }
        out.chain = std::move(chain);
    } else {
        out.graph = build(d);
        out.marked = marks(d, out.graph);
    }
    if (!d.divisor.empty()) {
        Divisor div(out.graph.size());
        for (const auto& [name, c] : d.divisor) div.add(resolve(out.graph, name), c);
        out.divisor = std::move(div);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LoadedSpec load_spec_file(const std::string& path) { return load_spec(read_file(path)); }

Divisor parse_divisor(const Graph& g, std::string_view text) {
    if (!text.empty() && text.front() == '@') {
        const std::string body = read_file(std::string(text.substr(1)));
        return parse_divisor(g, body);
    }
    Divisor d(g.size());
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        for (const auto& t : tokenize(raw)) {
            if (t.text == "0" || t.text == "+") continue;
            auto [name, c] = divisor_term(t, line);
            d.add(resolve(g, Located{name, {line, t.column}}), c);
        }
    }
    return d;
}

std::string input_digest(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace chipfire
