#include "matgeom/grassmann.hpp"

#include <sstream>

#include "matgeom/errors.hpp"

namespace matgeom {

std::uint64_t GrassmannSpec::point_count() const { return gaussian_binomial(m + n, m, field->q()); }

GrassmannPoint::GrassmannPoint(const GrassmannSpec& spec, const Matrix& basis) : spec_(spec) {
    if (basis.rows() != spec.m || basis.cols() != spec.m + spec.n || !same_field(basis.field(), spec.field))
        throw SpecMismatch("grassmann point: basis must be m x (m+n) over the space's field");
    basis_ = rref(basis);
    if (rank(basis_) != spec.m) throw PreconditionError("grassmann point: basis does not have full row rank");
}

std::vector<GrassmannPoint> enumerate_points(const GrassmannSpec& spec, std::uint64_t budget) {
    if (spec.m < 0 || spec.n < 0) throw PreconditionError("grassmann: negative dimension");
    const std::uint64_t total = spec.point_count();
    if (total > budget) throw BudgetExceeded("grassmann space has more than " + std::to_string(budget) + " points");

    const int m = spec.m;
    const int dim = spec.m + spec.n;
    const int q = spec.field->q();
    std::vector<GrassmannPoint> out;
    out.reserve(total);

    std::vector<int> pivots(m);
    for (int i = 0; i < m; ++i) pivots[i] = i;
    for (;;) {
        // Free cells: right of the row's pivot, outside every pivot column.
        std::vector<bool> is_pivot(dim, false);
        for (int c : pivots) is_pivot[c] = true;
        std::vector<std::pair<int, int>> free;
        for (int r = 0; r < m; ++r)
            for (int c = pivots[r] + 1; c < dim; ++c)
                if (!is_pivot[c]) free.emplace_back(r, c);

        std::vector<int> digits(free.size(), 0);
        for (;;) {
            Matrix b(spec.field, m, dim);
            for (int r = 0; r < m; ++r) b(r, pivots[r]) = 1;
            for (std::size_t i = 0; i < free.size(); ++i) b(free[i].first, free[i].second) = static_cast<Elem>(digits[i]);
            out.emplace_back(spec, b);
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
            if (i == digits.size()) break;
        }

        int i = m - 1;
        while (i >= 0 && pivots[i] == dim - m + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int j = i + 1; j < m; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    return out;
}

namespace {
void require_same(const GrassmannPoint& u, const GrassmannPoint& v) {
    if (!(u.spec() == v.spec())) throw SpecMismatch("grassmann points of different spaces");
}
}  // namespace

bool is_adjacent_points(const GrassmannPoint& u, const GrassmannPoint& v) {
    require_same(u, v);
    return rank(vstack(u.basis(), v.basis())) == u.spec().m + 1;
}

bool is_at_infinity(const GrassmannPoint& u) {
    const int m = u.spec().m;
    return rank(column_block(u.basis(), u.spec().n, m)) != m;
}

Matrix to_matrix(const GrassmannPoint& u) {
    if (is_at_infinity(u)) throw PreconditionError("to_matrix: point at infinity");
    const int m = u.spec().m;
    const int n = u.spec().n;
    return inverse(column_block(u.basis(), n, m)) * column_block(u.basis(), 0, n);
}

GrassmannPoint from_matrix(const Matrix& a) {
    const GrassmannSpec spec{a.field(), a.rows(), a.cols()};
    return GrassmannPoint(spec, hstack(a, Matrix::identity(a.field(), a.rows())));
}

bool is_complementary(const GrassmannPoint& u, const GrassmannPoint& v) {
    require_same(u, v);
    if (u.spec().m != u.spec().n) throw PreconditionError("is_complementary: requires m == n");
    return rank(vstack(u.basis(), v.basis())) == 2 * u.spec().m;
}

std::string to_text(const GrassmannPoint& u) {
    std::ostringstream os;
    os << u.spec().field->q() << ' ' << u.spec().m << ' ' << u.spec().n << " |";
    for (Elem e : u.basis().entries()) os << ' ' << static_cast<int>(e);
    return os.str();
}

GrassmannPoint point_from_text(const std::string& line) {
    std::istringstream is(line);
    int q = 0, m = 0, n = 0;
    std::string bar;
    if (!(is >> q >> m >> n >> bar) || bar != "|" || m < 0 || n < 0)
        throw ParseError("point text: expected 'q m n |' header");
    FieldPtr field;
    try {
        field = Field::make(q);
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("point text: ") + e.what());
    }
    std::vector<Elem> entries;
    for (int i = 0; i < m * (m + n); ++i) {
        int e = 0;
        if (!(is >> e) || !field->contains(e)) throw ParseError("point text: bad or missing entry");
        entries.push_back(static_cast<Elem>(e));
    }
    std::string extra;
    if (is >> extra) throw ParseError("point text: trailing tokens");
    try {
        return GrassmannPoint({field, m, n}, Matrix(field, m, m + n, std::move(entries)));
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("point text: ") + e.what());
    }
}

}  // namespace matgeom
