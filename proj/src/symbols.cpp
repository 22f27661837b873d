#include "blochlab/symbols.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <utility>

#include "blochlab/format.hpp"
#include "blochlab/grid.hpp"

namespace blochlab {

Complex pow_int(Complex z, std::int64_t n) {
    if (n < 0) throw std::domain_error("pow_int: negative exponent");
    Complex acc(1.0, 0.0);
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

struct HoloMap::Node {
    Kind kind = Kind::Identity;
    Complex a{0.0, 0.0};          // scalar parameter (constant / dilate / mobius)
    Complex phase{1.0, 0.0};      // rotate: e^(i angle)
    std::int64_t n = 1;           // power exponent
    std::vector<Complex> coeffs;  // poly coefficients / blaschke zeros
    std::shared_ptr<const Node> outer, inner;
    int depth = 1;
    bool has_poly = false;
    std::string spec;
};

namespace {

constexpr int kMaxComposeDepth = 32;

std::string complex_spec(Complex c) {
    std::string s = fp17(c.real());
    if (c.imag() != 0.0) s += "," + fp17(c.imag());
    return s;
}

void check_inside(Complex z) {
    if (!(std::abs(z) < 1.0))
        throw std::domain_error("symbol evaluation: |z| must be < 1, got |z| = " + fp17(std::abs(z)));
}

Complex mobius_eval(Complex a, Complex z) { return (a - z) / (1.0 - std::conj(a) * z); }

Complex mobius_deriv(Complex a, Complex z) {
    const Complex den = 1.0 - std::conj(a) * z;
    return (std::norm(a) - 1.0) / (den * den);
}

} // namespace

HoloMap HoloMap::identity() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Identity;
    n->spec = "identity";
    return HoloMap(std::move(n));
}

HoloMap HoloMap::constant(Complex c) {
    if (!(std::abs(c) < 1.0)) throw std::domain_error("constant symbol: |c| must be < 1");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->a = c;
    n->spec = "constant:" + fp17(c.real()) + "," + fp17(c.imag());
    return HoloMap(std::move(n));
}

HoloMap HoloMap::dilate(Complex a) {
    if (!(std::abs(a) <= 1.0)) throw std::domain_error("dilate symbol: |a| must be <= 1");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Dilate;
    n->a = a;
    n->spec = "dilate:" + complex_spec(a);
    return HoloMap(std::move(n));
}

HoloMap HoloMap::rotate(double angle) {
    if (!std::isfinite(angle)) throw std::domain_error("rotate symbol: angle must be finite");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Rotate;
    n->phase = std::polar(1.0, angle);
    n->spec = "rotate:" + fp17(angle);
    return HoloMap(std::move(n));
}

HoloMap HoloMap::mobius(Complex a) {
    if (!(std::abs(a) < 1.0)) throw std::domain_error("mobius symbol: |a| must be < 1");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Mobius;
    n->a = a;
    n->spec = "mobius:" + fp17(a.real()) + "," + fp17(a.imag());
    return HoloMap(std::move(n));
}

HoloMap HoloMap::power(std::int64_t p) {
    if (p < 1) throw std::domain_error("power symbol: exponent must be >= 1");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->n = p;
    n->spec = "power:" + int_str(p);
    return HoloMap(std::move(n));
}

HoloMap HoloMap::poly(std::vector<Complex> coeffs) {
    if (coeffs.empty()) throw std::domain_error("poly symbol: needs at least one coefficient");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Poly;
    n->has_poly = true;
    n->spec = "poly:";
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (i) n->spec += ',';
        n->spec += complex_spec(coeffs[i]);
    }
    n->coeffs = std::move(coeffs);
    return HoloMap(std::move(n));
}

HoloMap HoloMap::blaschke(std::vector<Complex> zeros) {
    if (zeros.empty()) throw std::domain_error("blaschke symbol: needs at least one zero");
    for (const Complex& a : zeros)
        if (!(std::abs(a) < 1.0)) throw std::domain_error("blaschke symbol: all zeros need modulus < 1");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Blaschke;
    n->spec = "blaschke:";
    for (size_t i = 0; i < zeros.size(); ++i) {
        if (i) n->spec += ';';
        n->spec += fp17(zeros[i].real()) + "," + fp17(zeros[i].imag());
    }
    n->coeffs = std::move(zeros);
    return HoloMap(std::move(n));
}

HoloMap HoloMap::compose(HoloMap outer, HoloMap inner) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Compose;
    n->depth = 1 + std::max(outer.node_->depth, inner.node_->depth);
    if (n->depth > kMaxComposeDepth)
        throw std::domain_error("compose: tree depth exceeds " + int_str(kMaxComposeDepth));
    n->has_poly = outer.node_->has_poly || inner.node_->has_poly;
    n->spec = "compose(" + outer.node_->spec + "," + inner.node_->spec + ")";
    n->outer = outer.node_;
    n->inner = inner.node_;
    return HoloMap(std::move(n));
}

HoloMap::Kind HoloMap::kind() const { return node_->kind; }
int HoloMap::depth() const { return node_->depth; }
const std::string& HoloMap::spec() const { return node_->spec; }
bool HoloMap::needs_validation() const { return node_->has_poly; }

namespace {

Complex eval_node(const HoloMap::Node& n, Complex z);

Complex deriv_node(const HoloMap::Node& n, Complex z) {
    using Kind = HoloMap::Kind;
    switch (n.kind) {
        case Kind::Identity: return {1.0, 0.0};
        case Kind::Constant: return {0.0, 0.0};
        case Kind::Dilate: return n.a;
        case Kind::Rotate: return n.phase;
        case Kind::Mobius: return mobius_deriv(n.a, z);
        case Kind::Power: return static_cast<double>(n.n) * pow_int(z, n.n - 1);
        case Kind::Poly: {
            // Horner on the derivative coefficients k*c_k.
            Complex acc(0.0, 0.0);
            for (size_t k = n.coeffs.size(); k-- > 1;)
                acc = acc * z + static_cast<double>(k) * n.coeffs[k];
            return acc;
        }
        case Kind::Blaschke: {
            // Full product rule: sum_i f_i' * prod_{k != i} f_k. The
            // logarithmic-derivative shortcut would blow up at the zeros.
            Complex total(0.0, 0.0);
            for (size_t i = 0; i < n.coeffs.size(); ++i) {
                Complex term = mobius_deriv(n.coeffs[i], z);
                for (size_t k = 0; k < n.coeffs.size(); ++k)
                    if (k != i) term *= mobius_eval(n.coeffs[k], z);
                total += term;
            }
            return total;
        }
        case Kind::Compose: {
            const Complex w = eval_node(*n.inner, z);
            return deriv_node(*n.outer, w) * deriv_node(*n.inner, z);
        }
    }
    throw std::logic_error("symbol derivative: unreachable kind");
}

Complex eval_node(const HoloMap::Node& n, Complex z) {
    using Kind = HoloMap::Kind;
    switch (n.kind) {
        case Kind::Identity: return z;
        case Kind::Constant: return n.a;
        case Kind::Dilate: return n.a * z;
        case Kind::Rotate: return n.phase * z;
        case Kind::Mobius: return mobius_eval(n.a, z);
        case Kind::Power: return pow_int(z, n.n);
        case Kind::Poly: {
            Complex acc(0.0, 0.0);
            for (size_t k = n.coeffs.size(); k-- > 0;) acc = acc * z + n.coeffs[k];
            return acc;
        }
        case Kind::Blaschke: {
            Complex acc(1.0, 0.0);
            for (const Complex& a : n.coeffs) acc *= mobius_eval(a, z);
            return acc;
        }
        case Kind::Compose: {
            const Complex w = eval_node(*n.inner, z);
            // A non-self-map inner stage (unvalidated Poly) can leave the
            // disk; surface that as the domain error it is.
            if (n.outer->kind != Kind::Poly) check_inside(w);
            return eval_node(*n.outer, w);
        }
    }
    throw std::logic_error("symbol evaluation: unreachable kind");
}

} // namespace

Complex HoloMap::eval(Complex z) const {
    check_inside(z);
    return eval_node(*node_, z);
}

Complex HoloMap::deriv(Complex z) const {
    check_inside(z);
    return deriv_node(*node_, z);
}

bool HoloMap::scalar_of_identity(Complex* factor) const {
    switch (node_->kind) {
        case Kind::Identity: *factor = Complex(1.0, 0.0); return true;
        case Kind::Dilate: *factor = node_->a; return true;
        case Kind::Rotate: *factor = node_->phase; return true;
        default: return false;
    }
}

bool HoloMap::is_constant(Complex* value) const {
    if (node_->kind != Kind::Constant) return false;
    if (value != nullptr) *value = node_->a;
    return true;
}

Complex power_deriv(const HoloMap& phi, std::int64_t j, Complex z) {
    if (j < 1) throw std::domain_error("power_deriv: index must be >= 1");
    const Complex w = phi.eval(z);
    // Binary powering keeps relative error at ~log2(j) ulps even when |w| is
    // within 1e-12 of 1, where exp(j*log w) would lose the modulus.
    return static_cast<double>(j) * pow_int(w, j - 1) * phi.deriv(z);
}

namespace {

struct ParseCursor {
    const std::string& text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("symbol spec: " + msg + " at position " +
                                    int_str(static_cast<std::int64_t>(pos)) + " in '" + text + "'");
    }
};

double parse_double_tok(ParseCursor& cur, const std::string& tok) {
    double v = 0.0;
    const char* b = tok.data();
    auto [p, ec] = std::from_chars(b, b + tok.size(), v);
    if (ec != std::errc() || p != b + tok.size()) cur.fail("bad number '" + tok + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

Complex parse_complex_tok(ParseCursor& cur, const std::string& tok) {
    const auto parts = split(tok, ',');
    if (parts.size() == 1) return {parse_double_tok(cur, parts[0]), 0.0};
    if (parts.size() == 2)
        return {parse_double_tok(cur, parts[0]), parse_double_tok(cur, parts[1])};
    cur.fail("expected <re> or <re>,<im>, got '" + tok + "'");
}

HoloMap parse_spec_rec(ParseCursor& cur, const std::string& text);

// compose(<spec>,<spec>) with the separating comma found at paren depth 0.
HoloMap parse_compose(ParseCursor& cur, const std::string& body) {
    int depth = 0;
    size_t comma = std::string::npos;
    for (size_t i = 0; i < body.size(); ++i) {
        if (body[i] == '(') ++depth;
        else if (body[i] == ')') --depth;
        else if (body[i] == ',' && depth == 0) { comma = i; break; }
    }
    if (comma == std::string::npos) cur.fail("compose needs two comma-separated specs");
    const size_t base = cur.pos;
    ParseCursor outer_cur{cur.text, base};
    HoloMap outer = parse_spec_rec(outer_cur, body.substr(0, comma));
    ParseCursor inner_cur{cur.text, base + comma + 1};
    HoloMap inner = parse_spec_rec(inner_cur, body.substr(comma + 1));
    return HoloMap::compose(std::move(outer), std::move(inner));
}

HoloMap parse_spec_rec(ParseCursor& cur, const std::string& text) {
    if (text.empty()) cur.fail("empty spec");
    if (text == "identity" || text == "id") return HoloMap::identity();
    if (text.rfind("compose(", 0) == 0) {
        if (text.back() != ')') cur.fail("unbalanced parentheses in compose");
        ParseCursor body_cur{cur.text, cur.pos + 8};
        return parse_compose(body_cur, text.substr(8, text.size() - 9));
    }
    const size_t colon = text.find(':');
    if (colon == std::string::npos) cur.fail("unknown symbol kind '" + text + "'");
    const std::string head = text.substr(0, colon);
    const std::string args = text.substr(colon + 1);
    ParseCursor args_cur{cur.text, cur.pos + colon + 1};

    if (head == "constant" || head == "const")
        return HoloMap::constant(parse_complex_tok(args_cur, args));
    if (head == "dilate") return HoloMap::dilate(parse_complex_tok(args_cur, args));
    if (head == "rotate") return HoloMap::rotate(parse_double_tok(args_cur, args));
    if (head == "mobius") return HoloMap::mobius(parse_complex_tok(args_cur, args));
    if (head == "power") {
        std::int64_t n = 0;
        const char* b = args.data();
        auto [p, ec] = std::from_chars(b, b + args.size(), n);
        if (ec != std::errc() || p != b + args.size()) args_cur.fail("bad integer '" + args + "'");
        return HoloMap::power(n);
    }
    if (head == "poly") {
        std::vector<Complex> coeffs;
        for (const auto& tok : split(args, ','))
            coeffs.emplace_back(parse_double_tok(args_cur, tok), 0.0);
        return HoloMap::poly(std::move(coeffs));
    }
    if (head == "blaschke") {
        std::vector<Complex> zeros;
        for (const auto& tok : split(args, ';')) zeros.push_back(parse_complex_tok(args_cur, tok));
        return HoloMap::blaschke(std::move(zeros));
    }
    cur.fail("unknown symbol kind '" + head + "'");
}

} // namespace

HoloMap parse_symbol_spec(const std::string& text) {
    ParseCursor cur{text, 0};
    return parse_spec_rec(cur, text);
}

SelfMapReport validate_self_map(const HoloMap& phi, long samples) {
    if (samples < 1000) throw std::invalid_argument("validate_self_map: samples must be >= 1000");

    // Structural pass for the classically self-mapping kinds: every node but
    // Poly maps the disk into itself by construction.
    const bool structural = !phi.needs_validation();

    const int n_angles = 64;
    const int n_radii = std::max<int>(16, static_cast<int>(samples / n_angles));
    const auto radii = clustered_radii(n_radii, 1.0 - 1e-12);

    SelfMapReport rep;
    for (const double r : radii) {
        for (int m = 0; m < n_angles; ++m) {
            const double angle = 2.0 * std::acos(-1.0) * m / n_angles;
            const Complex z = std::polar(r, angle);
            double mod;
            try {
                mod = std::abs(phi.eval(z));
            } catch (const std::domain_error&) {
                // A compose stage already left the disk: certain failure.
                rep.max_modulus = std::numeric_limits<double>::infinity();
                rep.arg_max = z;
                rep.pass = false;
                return rep;
            }
            if (mod > rep.max_modulus) {
                rep.max_modulus = mod;
                rep.arg_max = z;
            }
        }
    }
    rep.pass = structural || rep.max_modulus <= 1.0 - 1e-12;
    return rep;
}

} // namespace blochlab
