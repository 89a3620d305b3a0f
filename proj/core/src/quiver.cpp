#include "qdt/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qdt {

int QuiverModel::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    return -1;
}

int QuiverModel::arrow_index(const std::string& name) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == name) return static_cast<int>(i);
    return -1;
}

// ------------------------------------------------------------- parsing

namespace {

struct LineLexer {
    const std::string& s;
    int line;
    size_t i = 0;
    LineLexer(const std::string& str, int ln) : s(str), line(ln) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line, static_cast<int>(i) + 1, msg);
    }
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip();
        return i >= s.size();
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool eat_word(const std::string& w) {
        skip();
        if (s.compare(i, w.size(), w) == 0) {
            i += w.size();
            return true;
        }
        return false;
    }
    std::string ident() {
        skip();
        size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
            ++j;
        if (j == i) fail("expected identifier");
        std::string r = s.substr(i, j - i);
        i = j;
        return r;
    }
    long integer() {
        skip();
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) fail("expected integer");
        long v = std::stol(s.substr(i, j - i));
        i = j;
        return v;
    }
};

// term = [coeff *] arrow (* arrow | ^k)*, where coefficient factors are
// rational constants and parameter names; arrow and parameter factors may
// be interleaved, each optionally raised to a positive power.
NCTerm parse_potential_term(LineLexer& lx, const QuiverModel& m) {
    NCTerm t;
    bool first = true;
    for (;;) {
        char c = lx.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpq_class v(lx.integer());
            if (lx.eat('/')) v /= lx.integer();
            t.coef.constant *= v;
        } else if (c == '(') {
            lx.expect('(');
            mpq_class v(lx.integer());
            if (lx.eat('/')) v /= lx.integer();
            lx.expect(')');
            t.coef.constant *= v;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = lx.ident();
            int power = 1;
            if (lx.eat('^')) power = static_cast<int>(lx.integer());
            if (power < 1) lx.fail("power must be positive");
            int a = m.arrow_index(name);
            if (a >= 0) {
                for (int k = 0; k < power; ++k) t.word.push_back(a);
            } else if (std::find(m.params.begin(), m.params.end(), name) != m.params.end()) {
                t.coef.powers[name] += power;
            } else {
                lx.fail("'" + name + "' is neither a declared arrow nor a parameter");
            }
        } else if (first) {
            lx.fail("expected potential term");
        } else {
            lx.fail("unexpected character in potential term");
        }
        first = false;
        if (!lx.eat('*')) break;
    }
    if (t.word.empty()) lx.fail("potential term contains no arrows");
    return t;
}

void check_word_cyclic(LineLexer& lx, const QuiverModel& m, const std::vector<int>& word) {
    for (size_t i = 0; i + 1 < word.size(); ++i) {
        const Arrow& a = m.arrows[word[i]];
        const Arrow& b = m.arrows[word[i + 1]];
        if (a.dst != b.src)
            lx.fail("word is not composable: '" + a.name + "' ends at '" +
                    m.vertices[a.dst] + "' but '" + b.name + "' starts at '" +
                    m.vertices[b.src] + "'");
    }
    const Arrow& last = m.arrows[word.back()];
    const Arrow& head = m.arrows[word.front()];
    if (last.dst != head.src)
        lx.fail("word is not cyclically closed: ends at '" + m.vertices[last.dst] +
                "', starts at '" + m.vertices[head.src] + "'");
}

} // namespace

QuiverModel parse_model(const std::string& text) {
    QuiverModel m;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool saw_cut = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string s = raw.substr(0, raw.find('#'));
        LineLexer lx(s, lineno);
        if (lx.done()) continue;
        if (lx.eat_word("vertex")) {
            std::string v = lx.ident();
            if (m.vertex_index(v) >= 0) lx.fail("duplicate vertex '" + v + "'");
            m.vertices.push_back(v);
        } else if (lx.eat_word("arrow")) {
            std::string name = lx.ident();
            if (m.arrow_index(name) >= 0) lx.fail("duplicate arrow '" + name + "'");
            lx.expect(':');
            std::string src = lx.ident();
            lx.expect('-');
            lx.expect('>');
            std::string dst = lx.ident();
            int si = m.vertex_index(src), di = m.vertex_index(dst);
            if (si < 0) lx.fail("unknown vertex '" + src + "'");
            if (di < 0) lx.fail("unknown vertex '" + dst + "'");
            m.arrows.push_back({name, si, di});
        } else if (lx.eat_word("param")) {
            do {
                std::string p = lx.ident();
                if (std::find(m.params.begin(), m.params.end(), p) != m.params.end())
                    lx.fail("duplicate parameter '" + p + "'");
                m.params.push_back(p);
            } while (lx.eat(','));
        } else if (lx.eat_word("potential")) {
            if (!m.potential.empty()) lx.fail("duplicate potential");
            m.potential_name = lx.ident();
            lx.expect('=');
            bool neg = lx.eat('-');
            for (;;) {
                NCTerm t = parse_potential_term(lx, m);
                if (neg) t.coef.constant = -t.coef.constant;
                check_word_cyclic(lx, m, t.word);
                m.potential.push_back(t);
                if (lx.eat('+')) neg = false;
                else if (lx.eat('-')) neg = true;
                else break;
            }
            if (!lx.done()) lx.fail("trailing characters after potential");
        } else if (lx.eat_word("cut")) {
            if (saw_cut) lx.fail("duplicate cut");
            saw_cut = true;
            lx.expect('{');
            std::vector<int> I;
            do {
                std::string a = lx.ident();
                int ai = m.arrow_index(a);
                if (ai < 0) lx.fail("unknown arrow '" + a + "' in cut");
                I.push_back(ai);
            } while (lx.eat(','));
            lx.expect('}');
            CutCheck ck = validate_cut(m, I);
            if (!ck.valid) lx.fail("declared cut is invalid: " + ck.reason);
            m.cut = I;
        } else {
            lx.fail("unknown directive");
        }
    }
    return m;
}

// ----------------------------------------------------------- rendering

std::string ParamMonomial::to_string() const {
    std::vector<std::string> parts;
    mpq_class a = abs(constant);
    if (a != 1 || powers.empty()) {
        std::ostringstream os;
        os << a;
        std::string cs = os.str();
        parts.push_back(a.get_den() != 1 ? "(" + cs + ")" : cs);
    }
    for (const auto& [p, e] : powers)
        parts.push_back(e == 1 ? p : p + "^" + std::to_string(e));
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "*";
        out += parts[i];
    }
    return out;
}

namespace {

std::string render_term(const QuiverModel& m, const NCTerm& t) {
    std::string out;
    mpq_class a = abs(t.coef.constant);
    if (a != 1 || !t.coef.powers.empty()) {
        ParamMonomial pm{a, t.coef.powers};
        out = pm.to_string();
    }
    for (int w : t.word) {
        if (!out.empty()) out += "*";
        out += m.arrows[w].name;
    }
    return out;
}

std::string render_terms(const QuiverModel& m, const NCPoly& p) {
    std::string out;
    for (size_t i = 0; i < p.size(); ++i) {
        bool neg = p[i].coef.constant < 0;
        if (i == 0)
            out += (neg ? "-" : "") + render_term(m, p[i]);
        else
            out += (neg ? " - " : " + ") + render_term(m, p[i]);
    }
    return out;
}

} // namespace

std::string render_ncpoly(const QuiverModel& m, const NCPoly& p) {
    if (p.empty()) return "0";
    return render_terms(m, p);
}

std::string render_model(const QuiverModel& m) {
    std::ostringstream os;
    for (const auto& v : m.vertices) os << "vertex " << v << "\n";
    for (const auto& a : m.arrows)
        os << "arrow " << a.name << ": " << m.vertices[a.src] << " -> "
           << m.vertices[a.dst] << "\n";
    if (!m.params.empty()) {
        os << "param ";
        for (size_t i = 0; i < m.params.size(); ++i)
            os << (i ? ", " : "") << m.params[i];
        os << "\n";
    }
    if (!m.potential.empty())
        os << "potential " << m.potential_name << " = " << render_terms(m, m.potential)
           << "\n";
    if (m.cut) {
        os << "cut { ";
        for (size_t i = 0; i < m.cut->size(); ++i)
            os << (i ? ", " : "") << m.arrows[(*m.cut)[i]].name;
        os << " }\n";
    }
    return os.str();
}

// ---------------------------------------------------------- operations

namespace {

void add_nc_term(NCPoly& p, NCTerm t) {
    if (t.coef.constant == 0) return;
    for (auto& u : p) {
        if (u.word == t.word && u.coef.powers == t.coef.powers) {
            u.coef.constant += t.coef.constant;
            if (u.coef.constant == 0)
                p.erase(p.begin() + (&u - p.data()));
            return;
        }
    }
    p.push_back(std::move(t));
}

} // namespace

NCPoly cyclic_derivative(const QuiverModel& m, int arrow) {
    NCPoly out;
    for (const auto& term : m.potential) {
        for (size_t pos = 0; pos < term.word.size(); ++pos) {
            if (term.word[pos] != arrow) continue;
            // rotate so the occurrence comes first, then delete it
            std::vector<int> w(term.word.begin() + pos + 1, term.word.end());
            w.insert(w.end(), term.word.begin(), term.word.begin() + pos);
            add_nc_term(out, NCTerm{term.coef, std::move(w)});
        }
    }
    // canonical term order, so rotated potentials derive identically
    std::stable_sort(out.begin(), out.end(),
                     [](const NCTerm& a, const NCTerm& b) { return a.word < b.word; });
    return out;
}

long euler_form(const QuiverModel& m, const DimVec& alpha, const DimVec& beta) {
    if (alpha.size() != m.vertices.size() || beta.size() != m.vertices.size())
        throw ShapeMismatch("dimension vector length does not match vertex count");
    long s = 0;
    for (size_t i = 0; i < alpha.size(); ++i) s += static_cast<long>(alpha[i]) * beta[i];
    for (const auto& a : m.arrows) s -= static_cast<long>(alpha[a.src]) * beta[a.dst];
    return s;
}

CutCheck validate_cut(const QuiverModel& m, const std::vector<int>& I) {
    for (const auto& term : m.potential) {
        int deg = 0;
        for (int w : term.word)
            if (std::find(I.begin(), I.end(), w) != I.end()) ++deg;
        if (deg != 1) {
            return {false, "word '" + render_term(m, NCTerm{{mpq_class(1), {}}, term.word}) +
                               "' has cut degree " + std::to_string(deg)};
        }
    }
    return {true, ""};
}

long cut_degree(const QuiverModel& m, const std::vector<int>& I, const DimVec& alpha) {
    long s = 0;
    for (int ai : I) {
        const Arrow& a = m.arrows[ai];
        s += static_cast<long>(alpha[a.src]) * alpha[a.dst];
    }
    return s;
}

ReducedPresentation reduced_presentation(const QuiverModel& m, const std::vector<int>& I) {
    CutCheck ck = validate_cut(m, I);
    if (!ck.valid) throw InvalidCut(ck.reason);

    ReducedPresentation rp;
    rp.quiver.vertices = m.vertices;
    rp.quiver.params = m.params;
    std::vector<int> remap(m.arrows.size(), -1);
    for (size_t a = 0; a < m.arrows.size(); ++a) {
        if (std::find(I.begin(), I.end(), static_cast<int>(a)) != I.end()) continue;
        remap[a] = static_cast<int>(rp.quiver.arrows.size());
        rp.quiver.arrows.push_back(m.arrows[a]);
    }
    for (int ai : I) {
        NCPoly rel = cyclic_derivative(m, ai);
        for (auto& t : rel)
            for (int& w : t.word) {
                // cut homogeneity guarantees the derivative has no I-arrows
                w = remap[w];
                if (w < 0) throw InvalidCut("relation retains a cut arrow");
            }
        rp.relations.push_back(std::move(rel));
    }
    return rp;
}

std::string cyclic_model_text(int n) {
    if (n < 1) throw std::invalid_argument("cyclic quiver needs n >= 1");
    int k = n + 1;
    std::ostringstream os;
    os << "# Deformed cyclic quiver with " << k << " vertices.\n";
    for (int i = 0; i < k; ++i) os << "vertex v" << i << "\n";
    for (int i = 0; i < k; ++i)
        os << "arrow a" << i << ": v" << i << " -> v" << (i + 1) % k << "\n";
    for (int i = 0; i < k; ++i)
        os << "arrow a" << i << "s: v" << (i + 1) % k << " -> v" << i << "\n";
    for (int i = 0; i < k; ++i) os << "arrow b" << i << ": v" << i << " -> v" << i << "\n";
    os << "param q\n";
    // One-parameter normal form: the deformation sits on a single term, so the
    // product of the two coefficient families around the cycle is q.
    os << "potential W = ";
    for (int i = 0; i < k; ++i) {
        if (i) os << " + ";
        os << "b" << (i + 1) % k << "*a" << i << "s*a" << i << " - ";
        if (i == 0) os << "q*";
        os << "b" << i << "*a" << i << "*a" << i << "s";
    }
    os << "\n";
    os << "cut { ";
    for (int i = 0; i < k; ++i) os << (i ? ", " : "") << "b" << i;
    os << " }\n";
    return os.str();
}

} // namespace qdt
