#include "matgeom/matspace.hpp"

#include <sstream>

#include "matgeom/errors.hpp"

namespace matgeom {

namespace {

void require_same(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || !same_field(a.field(), b.field()))
        throw SpecMismatch(std::string(what) + ": operands have different shapes or fields");
}

// In-place elimination to reduced row-echelon form; returns the pivot columns.
// When `track` is non-null the same row operations are applied to it.
std::vector<int> eliminate(Matrix& a, Matrix* track) {
    const Field& F = a.F();
    const int m = a.rows();
    const int n = a.cols();
    std::vector<int> pivots;
    int row = 0;
    for (int c = 0; c < n && row < m; ++c) {
        int piv = -1;
        for (int r = row; r < m; ++r) {
            if (a(r, c) != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != row) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(row, j));
            if (track)
                for (int j = 0; j < track->cols(); ++j) std::swap((*track)(piv, j), (*track)(row, j));
        }
        const Elem s = F.inv(a(row, c));
        for (int j = 0; j < n; ++j) a(row, j) = F.mul(s, a(row, j));
        if (track)
            for (int j = 0; j < track->cols(); ++j) (*track)(row, j) = F.mul(s, (*track)(row, j));
        for (int r = 0; r < m; ++r) {
            if (r == row || a(r, c) == 0) continue;
            const Elem f = a(r, c);
            for (int j = 0; j < n; ++j) a(r, j) = F.sub(a(r, j), F.mul(f, a(row, j)));
            if (track)
                for (int j = 0; j < track->cols(); ++j)
                    (*track)(r, j) = F.sub((*track)(r, j), F.mul(f, (*track)(row, j)));
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    if (p > UINT64_MAX) throw BudgetExceeded("count does not fit in 64 bits");
    return static_cast<std::uint64_t>(p);
}

std::uint64_t ipow(std::uint64_t base, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, base);
    return r;
}

}  // namespace

std::uint64_t SpaceSpec::size() const { return ipow(static_cast<std::uint64_t>(q()), m * n); }

Matrix::Matrix(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {
    if (!field_) throw PreconditionError("matrix without a field");
    if (rows < 0 || cols < 0) throw PreconditionError("negative matrix dimension");
}

Matrix::Matrix(FieldPtr field, int rows, int cols, std::vector<Elem> entries)
    : Matrix(std::move(field), rows, cols) {
    if (entries.size() != data_.size()) throw PreconditionError("entry count does not match shape");
    for (Elem e : entries)
        if (!field_->contains(e)) throw PreconditionError("entry is not a field element index");
    data_ = std::move(entries);
}

Matrix Matrix::identity(FieldPtr field, int n) {
    Matrix a(std::move(field), n, n);
    for (int i = 0; i < n; ++i) a(i, i) = 1;
    return a;
}

Matrix Matrix::unit(FieldPtr field, int rows, int cols, int row, int col, Elem value) {
    Matrix a(std::move(field), rows, cols);
    if (row < 0 || row >= rows || col < 0 || col >= cols) throw PreconditionError("unit position out of range");
    if (!a.F().contains(value)) throw PreconditionError("value is not a field element index");
    a(row, col) = value;
    return a;
}

Matrix Matrix::column(FieldPtr field, std::vector<Elem> entries) {
    const int m = static_cast<int>(entries.size());
    return Matrix(std::move(field), m, 1, std::move(entries));
}

bool Matrix::is_zero() const noexcept {
    for (Elem e : data_)
        if (e != 0) return false;
    return true;
}

Matrix Matrix::row(int r) const {
    Matrix out(field_, 1, cols_);
    for (int c = 0; c < cols_; ++c) out(0, c) = (*this)(r, c);
    return out;
}

Matrix Matrix::col(int c) const {
    Matrix out(field_, rows_, 1);
    for (int r = 0; r < rows_; ++r) out(r, 0) = (*this)(r, c);
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same(a, b, "add");
    Matrix out(a.field(), a.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) out(r, c) = a.F().add(a(r, c), b(r, c));
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same(a, b, "subtract");
    Matrix out(a.field(), a.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) out(r, c) = a.F().sub(a(r, c), b(r, c));
    return out;
}

Matrix operator-(const Matrix& a) {
    Matrix out(a.field(), a.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) out(r, c) = a.F().neg(a(r, c));
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows() || !same_field(a.field(), b.field()))
        throw SpecMismatch("multiply: inner dimensions or fields differ");
    const Field& F = a.F();
    Matrix out(a.field(), a.rows(), b.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int k = 0; k < a.cols(); ++k) {
            const Elem x = a(r, k);
            if (x == 0) continue;
            for (int c = 0; c < b.cols(); ++c) out(r, c) = F.add(out(r, c), F.mul(x, b(k, c)));
        }
    return out;
}

Matrix scale(Elem s, const Matrix& a) {
    Matrix out(a.field(), a.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) out(r, c) = a.F().mul(s, a(r, c));
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.field(), a.cols(), a.rows());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
    return out;
}

Matrix apply_automorphism(const FieldAutomorphism& sigma, const Matrix& a) {
    if (!same_field(sigma.field, a.field())) throw SpecMismatch("automorphism of a different field");
    Matrix out(a.field(), a.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) out(r, c) = a.F().frobenius(sigma.frobenius_power, a(r, c));
    return out;
}

Matrix inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw PreconditionError("inverse of a non-square matrix");
    Matrix work = a;
    Matrix inv = Matrix::identity(a.field(), a.rows());
    if (static_cast<int>(eliminate(work, &inv).size()) != a.rows())
        throw PreconditionError("inverse of a singular matrix");
    return inv;
}

Matrix hstack(const Matrix& left, const Matrix& right) {
    if (left.rows() != right.rows() || !same_field(left.field(), right.field()))
        throw SpecMismatch("hstack: row counts or fields differ");
    Matrix out(left.field(), left.rows(), left.cols() + right.cols());
    for (int r = 0; r < left.rows(); ++r) {
        for (int c = 0; c < left.cols(); ++c) out(r, c) = left(r, c);
        for (int c = 0; c < right.cols(); ++c) out(r, left.cols() + c) = right(r, c);
    }
    return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
    if (top.cols() != bottom.cols() || !same_field(top.field(), bottom.field()))
        throw SpecMismatch("vstack: column counts or fields differ");
    Matrix out(top.field(), top.rows() + bottom.rows(), top.cols());
    for (int c = 0; c < top.cols(); ++c) {
        for (int r = 0; r < top.rows(); ++r) out(r, c) = top(r, c);
        for (int r = 0; r < bottom.rows(); ++r) out(top.rows() + r, c) = bottom(r, c);
    }
    return out;
}

Matrix column_block(const Matrix& a, int first, int count) {
    if (first < 0 || count < 0 || first + count > a.cols()) throw PreconditionError("column block out of range");
    Matrix out(a.field(), a.rows(), count);
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < count; ++c) out(r, c) = a(r, first + c);
    return out;
}

int rank(const Matrix& a) {
    Matrix work = a;
    return static_cast<int>(eliminate(work, nullptr).size());
}

Matrix rref(const Matrix& a) {
    Matrix work = a;
    eliminate(work, nullptr);
    return work;
}

bool is_dis(const Matrix& a, const Matrix& b) {
    require_same(a, b, "is_dis");
    return rank(a - b) == a.cols();
}

bool is_adjacent(const Matrix& a, const Matrix& b) {
    require_same(a, b, "is_adjacent");
    return rank(a - b) == 1;
}

RankNormalForm rank_normal_form(const Matrix& a) {
    const Field& F = a.F();
    Matrix work = a;
    Matrix P = Matrix::identity(a.field(), a.rows());
    const auto pivots = eliminate(work, &P);
    const int r = static_cast<int>(pivots.size());

    // work = P A is reduced row-echelon; column operations finish the job.
    Matrix Q = Matrix::identity(a.field(), a.cols());
    auto swap_cols = [](Matrix& x, int i, int j) {
        for (int row = 0; row < x.rows(); ++row) std::swap(x(row, i), x(row, j));
    };
    for (int i = 0; i < r; ++i) {
        const int c = pivots[i];
        if (c != i) {
            swap_cols(work, i, c);
            swap_cols(Q, i, c);
        }
        for (int j = 0; j < a.cols(); ++j) {
            if (j == i || work(i, j) == 0) continue;
            const Elem f = work(i, j);
            for (int row = 0; row < work.rows(); ++row) work(row, j) = F.sub(work(row, j), F.mul(f, work(row, i)));
            for (int row = 0; row < Q.rows(); ++row) Q(row, j) = F.sub(Q(row, j), F.mul(f, Q(row, i)));
        }
    }
    return {std::move(P), std::move(Q), r};
}

Matrix PairNormalization::forward(const Matrix& x) const { return P * x * Q - C; }

Matrix PairNormalization::backward(const Matrix& y) const { return inverse(P) * (y + C) * inverse(Q); }

PairNormalization normalize_pair(const Matrix& a, const Matrix& b) {
    require_same(a, b, "normalize_pair");
    auto nf = rank_normal_form(b - a);
    Matrix C = nf.P * a * nf.Q;
    return {std::move(nf.P), std::move(nf.Q), std::move(C), nf.r};
}

std::pair<Matrix, Matrix> rank_one_factor(const Matrix& a) {
    if (rank(a) != 1) throw PreconditionError("rank_one_factor: matrix does not have rank one");
    const Field& F = a.F();
    int col = 0;
    while (a.col(col).is_zero()) ++col;
    Matrix x = a.col(col);
    int lead = 0;
    while (x(lead, 0) == 0) ++lead;
    x = scale(F.inv(x(lead, 0)), x);
    // x(lead) == 1, so row `lead` of A is y^t.
    return {std::move(x), transpose(a.row(lead))};
}

std::uint64_t matrix_index(const Matrix& a) {
    const std::uint64_t q = a.F().q();
    std::uint64_t idx = 0;
    const auto e = a.entries();
    for (std::size_t i = e.size(); i-- > 0;) idx = checked_mul(idx, q) + e[i];
    return idx;
}

Matrix matrix_from_index(const SpaceSpec& spec, std::uint64_t index) {
    if (index >= spec.size()) throw PreconditionError("matrix index out of range");
    Matrix a(spec);
    const std::uint64_t q = spec.q();
    for (int r = 0; r < spec.m; ++r)
        for (int c = 0; c < spec.n; ++c) {
            a(r, c) = static_cast<Elem>(index % q);
            index /= q;
        }
    return a;
}

std::vector<Matrix> enumerate_matrices(const SpaceSpec& spec, std::uint64_t budget) {
    std::uint64_t total = 0;
    try {
        total = spec.size();
    } catch (const BudgetExceeded&) {
        total = UINT64_MAX;
    }
    if (total > budget)
        throw BudgetExceeded("space has more than " + std::to_string(budget) + " matrices");
    std::vector<Matrix> out;
    out.reserve(total);
    for (std::uint64_t i = 0; i < total; ++i) out.push_back(matrix_from_index(spec, i));
    return out;
}

std::uint64_t gaussian_binomial(int n, int k, int q) {
    if (k < 0 || k > n) return 0;
    // Pascal-style recurrence keeps every intermediate an exact integer.
    std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(n + 1, 0));
    for (int i = 0; i <= n; ++i) {
        t[i][0] = 1;
        t[i][i] = 1;
        for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + checked_mul(ipow(q, j), t[i - 1][j]);
    }
    return t[n][k];
}

std::uint64_t count_by_rank(const SpaceSpec& spec, int r) {
    if (r < 0 || r > std::min(spec.m, spec.n)) throw PreconditionError("rank out of range");
    const std::uint64_t q = spec.q();
    // r-tuples of independent vectors in F^m, times r-dim subspaces of F^n.
    std::uint64_t frames = 1;
    for (int i = 0; i < r; ++i) frames = checked_mul(frames, ipow(q, spec.m) - ipow(q, i));
    return checked_mul(frames, gaussian_binomial(spec.n, r, spec.q()));
}

std::string to_text(const Matrix& a) {
    std::ostringstream os;
    os << a.F().q() << ' ' << a.rows() << ' ' << a.cols();
    for (Elem e : a.entries()) os << ' ' << static_cast<int>(e);
    return os.str();
}

Matrix matrix_from_text(const std::string& line) {
    std::istringstream is(line);
    int q = 0, m = 0, n = 0;
    if (!(is >> q >> m >> n) || m < 0 || n < 0) throw ParseError("matrix text: expected 'q m n' header");
    FieldPtr field;
    try {
        field = Field::make(q);
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("matrix text: ") + e.what());
    }
    std::vector<Elem> entries;
    for (int i = 0; i < m * n; ++i) {
        int e = 0;
        if (!(is >> e) || !field->contains(e)) throw ParseError("matrix text: bad or missing entry");
        entries.push_back(static_cast<Elem>(e));
    }
    std::string extra;
    if (is >> extra) throw ParseError("matrix text: trailing tokens");
    return Matrix(field, m, n, std::move(entries));
}

MatrixSpace::MatrixSpace(SpaceSpec spec, std::uint64_t budget) : spec_(std::move(spec)), cells_(spec_.m * spec_.n) {
    std::uint64_t total = 0;
    try {
        total = spec_.size();
    } catch (const BudgetExceeded&) {
        total = UINT64_MAX;
    }
    if (total > budget || total > UINT32_MAX)
        throw BudgetExceeded("space has more than " + std::to_string(budget) + " matrices");
    size_ = static_cast<std::uint32_t>(total);

    place_.resize(cells_);
    std::uint32_t p = 1;
    for (int i = 0; i < cells_; ++i) {
        place_[i] = p;
        p *= static_cast<std::uint32_t>(spec_.q());
    }

    digits_.resize(std::size_t{size_} * cells_);
    rank_.resize(size_);
    const std::uint32_t q = spec_.q();
    Matrix scratch(spec_);
    for (std::uint32_t i = 0; i < size_; ++i) {
        std::uint32_t v = i;
        Elem* d = digits_.data() + std::size_t{i} * cells_;
        for (int c = 0; c < cells_; ++c) {
            d[c] = static_cast<Elem>(v % q);
            v /= q;
            scratch(c / spec_.n, c % spec_.n) = d[c];
        }
        rank_[i] = static_cast<std::uint8_t>(matgeom::rank(scratch));
    }
}

std::uint32_t MatrixSpace::difference(std::uint32_t i, std::uint32_t j) const noexcept {
    const Field& F = *spec_.field;
    const Elem* a = digits_.data() + std::size_t{i} * cells_;
    const Elem* b = digits_.data() + std::size_t{j} * cells_;
    std::uint32_t idx = 0;
    for (int c = 0; c < cells_; ++c) idx += F.sub(a[c], b[c]) * place_[c];
    return idx;
}

std::uint32_t MatrixSpace::encode(const Matrix& a) const {
    if (!(a.spec() == spec_)) throw SpecMismatch("matrix does not belong to this space");
    return static_cast<std::uint32_t>(matrix_index(a));
}

}  // namespace matgeom
