#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace blochlab {

using Complex = std::complex<double>;

// z^n by binary exponentiation, n >= 0. Deterministic and accurate to a few
// ulps regardless of n, unlike the exp/log path of std::pow for complexes.
Complex pow_int(Complex z, std::int64_t n);

// Thrown when a symbol fails self-map validation and the caller did not force.
class SelfMapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SelfMapReport {
    double max_modulus = 0.0;
    Complex arg_max{0.0, 0.0};
    bool pass = false;
};

// A holomorphic self-map of the unit disk as an immutable expression tree
// with exact derivatives. All leaves are classically self-mapping except
// Poly, which must be validated numerically before operator-level use.
class HoloMap {
public:
    enum class Kind { Identity, Constant, Dilate, Rotate, Mobius, Power, Poly, Blaschke, Compose };

    static HoloMap identity();
    static HoloMap constant(Complex c);                 // |c| < 1
    static HoloMap dilate(Complex a);                   // |a| <= 1
    static HoloMap rotate(double angle);                // z -> e^(i angle) z
    static HoloMap mobius(Complex a);                   // z -> (a-z)/(1-conj(a) z), |a| < 1
    static HoloMap power(std::int64_t n);               // n >= 1
    static HoloMap poly(std::vector<Complex> coeffs);   // c0 + c1 z + ...
    static HoloMap blaschke(std::vector<Complex> zeros);// product of Mobius factors
    static HoloMap compose(HoloMap outer, HoloMap inner);

    Kind kind() const;
    int depth() const;
    const std::string& spec() const;

    // True when the tree contains a Poly node, whose self-map property is
    // not structural and needs the numerical validator.
    bool needs_validation() const;

    Complex eval(Complex z) const;  // |z| < 1 required (std::domain_error)
    Complex deriv(Complex z) const; // chain/product rule, exact

    // Detects z -> a*z shapes (identity, dilation, rotation): those make
    // |(phi^j)'| radial, unlocking the 1-D seminorm path.
    bool scalar_of_identity(Complex* factor) const;
    bool is_constant(Complex* value = nullptr) const;

    struct Node; // defined in symbols.cpp; opaque to callers

private:
    explicit HoloMap(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Grammar: `id` | `const:<re>[,<im>]` | `dilate:<re>[,<im>]` | `rotate:<t>` |
// `mobius:<re>[,<im>]` | `power:<n>` | `poly:<c0>,<c1>,...` |
// `blaschke:<re>,<im>[;<re>,<im>...]` | `compose(<spec>,<spec>)`.
// Malformed input -> std::invalid_argument with the offending position;
// modulus violations -> std::domain_error.
HoloMap parse_symbol_spec(const std::string& text);

// j * phi(z)^(j-1) * phi'(z): the derivative of the j-th power of the map.
Complex power_deriv(const HoloMap& phi, std::int64_t j, Complex z);

// Samples |phi| on a boundary-clustered polar grid (about `samples` points,
// samples >= 1000). pass iff the tree is structurally a self-map, or the grid
// max stays <= 1 - 1e-12. Failure is a report, not an exception.
SelfMapReport validate_self_map(const HoloMap& phi, long samples);

} // namespace blochlab
