#include "vanlat/int_matrix.hpp"
#include "vanlat/smith.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace vanlat {

IntMatrix cartan_a(std::size_t m) {
    IntMatrix c(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        c(i, i) = 2;
        if (i + 1 < m) {
            c(i, i + 1) = -1;
            c(i + 1, i) = -1;
        }
    }
    return c;
}

IntMatrix standard_symplectic(std::size_t pairs) {
    IntMatrix j(2 * pairs, 2 * pairs);
    for (std::size_t u = 0; u < pairs; ++u) {
        j(2 * u, 2 * u + 1) = 1;
        j(2 * u + 1, 2 * u) = -1;
    }
    return j;
}

void write_matrix_text(std::ostream& os, const IntMatrix& m) {
    os << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m(i, j);
        }
        os << '\n';
    }
}

IntMatrix read_matrix_text(std::istream& is) {
    long long rows = -1, cols = -1;
    if (!(is >> rows >> cols) || rows < 0 || cols < 0) throw ShapeError("matrix text: bad header");
    IntMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            long long v;
            if (!(is >> v)) throw ShapeError("matrix text: truncated body");
            m(i, j) = v;
        }
    return m;
}

std::string matrix_to_text(const IntMatrix& m) {
    std::ostringstream os;
    write_matrix_text(os, m);
    return os.str();
}

IntMatrix matrix_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_matrix_text(is);
}

AlternatingType alternating_type(const IntMatrix& gram) {
    if (!gram.is_alternating()) throw std::invalid_argument("alternating_type: matrix is not alternating");
    const auto inv = smith_invariants(gram);
    if (inv.size() % 2 != 0) throw std::logic_error("alternating_type: odd rank for alternating form");
    AlternatingType t;
    for (std::size_t i = 0; i < inv.size(); i += 2) {
        if (inv[i] != inv[i + 1]) throw std::logic_error("alternating_type: unpaired invariant factor");
        t.divisors.push_back(inv[i]);
    }
    t.nullity = gram.rows() - inv.size();
    return t;
}

}  // namespace vanlat
