#include "flowcalc/exterior.hpp"

#include "flowcalc/error.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <optional>
#include <cmath>

namespace flowcalc {

namespace {

void check_dim(int dim) {
    if (dim < 1 || dim > kMaxExteriorDim) {
        throw DimensionError("exterior algebra dimension " + std::to_string(dim) +
                             " outside [1, " + std::to_string(kMaxExteriorDim) + "]");
    }
}

std::uint32_t full_mask(int dim) { return (std::uint32_t{1} << dim) - 1u; }

std::size_t rank_of_mask(int dim, std::uint32_t mask) {
    const int m = std::popcount(mask);
    std::size_t rank = 0;
    int previous = 0;
    int position = 1;
    for (int index = 1; index <= dim; ++index) {
        if (!(mask & (std::uint32_t{1} << (index - 1)))) continue;
        for (int j = previous + 1; j < index; ++j) rank += binomial(dim - j, m - position);
        previous = index;
        ++position;
    }
    return rank;
}

// Masks of grade m in lexicographic order of their index sequences.
std::vector<std::uint32_t> lexicographic_masks(int dim, int grade) {
    std::vector<std::uint32_t> masks;
    masks.reserve(binomial(dim, grade));
    std::vector<int> idx(static_cast<std::size_t>(grade));
    for (int i = 0; i < grade; ++i) idx[i] = i + 1;
    while (true) {
        std::uint32_t mask = 0;
        for (int i : idx) mask |= std::uint32_t{1} << (i - 1);
        masks.push_back(mask);
        int k = grade - 1;
        while (k >= 0 && idx[k] == dim - grade + k + 1) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < grade; ++j) idx[j] = idx[j - 1] + 1;
    }
    return masks;
}

void require_same_shape(const GradedElement& u, const GradedElement& v, const char* op) {
    if (u.dim() != v.dim()) {
        throw DimensionError(std::string(op) + ": dimension mismatch " + std::to_string(u.dim()) +
                             " vs " + std::to_string(v.dim()));
    }
    if (u.grade() != v.grade()) {
        throw DimensionError(std::string(op) + ": grade mismatch " + std::to_string(u.grade()) +
                             " vs " + std::to_string(v.grade()));
    }
}

} // namespace

std::size_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::size_t result = 1;
    for (int i = 1; i <= k; ++i) result = result * static_cast<std::size_t>(n - k + i) / i;
    return result;
}

int merge_sign(std::uint32_t left_mask, std::uint32_t right_mask) {
    if (left_mask & right_mask) return 0;
    int inversions = 0;
    for (std::uint32_t rest = right_mask; rest; rest &= rest - 1) {
        const int bit = std::countr_zero(rest);
        const std::uint32_t above = ~((std::uint32_t{2} << bit) - 1u);
        inversions += std::popcount(left_mask & above);
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

// --- MultiIndex -------------------------------------------------------------

MultiIndex::MultiIndex(int dim, std::vector<int> indices) : dim_(dim), indices_(std::move(indices)) {
    check_dim(dim);
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] < 1 || indices_[i] > dim) {
            throw DimensionError("multi-index entry " + std::to_string(indices_[i]) +
                                 " outside [1, " + std::to_string(dim) + "]");
        }
        if (i > 0 && indices_[i] <= indices_[i - 1]) {
            throw DimensionError("multi-index entries must be strictly increasing");
        }
    }
}

MultiIndex MultiIndex::from_mask(int dim, std::uint32_t mask) {
    check_dim(dim);
    if (mask & ~full_mask(dim)) throw DimensionError("mask has bits beyond the dimension");
    std::vector<int> indices;
    for (int i = 0; i < dim; ++i) {
        if (mask & (std::uint32_t{1} << i)) indices.push_back(i + 1);
    }
    return MultiIndex(dim, std::move(indices));
}

std::uint32_t MultiIndex::mask() const noexcept {
    std::uint32_t mask = 0;
    for (int i : indices_) mask |= std::uint32_t{1} << (i - 1);
    return mask;
}

std::string MultiIndex::to_string() const {
    if (indices_.empty()) return "1";
    std::string s = "e";
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        // Indices above 9 are separated to stay unambiguous.
        if (i > 0 && dim_ > 9) s += '_';
        s += std::to_string(indices_[i]);
    }
    return s;
}

std::vector<MultiIndex> basis(int dim, int grade) {
    check_dim(dim);
    if (grade < 0 || grade > dim) throw DimensionError("grade outside [0, dim]");
    std::vector<MultiIndex> out;
    for (std::uint32_t mask : lexicographic_masks(dim, grade)) out.push_back(MultiIndex::from_mask(dim, mask));
    return out;
}

std::size_t basis_position(const MultiIndex& index) { return rank_of_mask(index.dim(), index.mask()); }

// --- GradedElement ----------------------------------------------------------

GradedElement::GradedElement(int dim, int grade, std::vector<double> coeffs, Space space)
    : dim_(dim), grade_(grade), coeffs_(std::move(coeffs)), space_(space) {
    check_dim(dim);
    if (grade < 0 || grade > dim) {
        throw DimensionError("grade " + std::to_string(grade) + " outside [0, " + std::to_string(dim) + "]");
    }
    if (coeffs_.size() != binomial(dim, grade)) {
        throw DimensionError("grade-" + std::to_string(grade) + " element in dimension " +
                             std::to_string(dim) + " needs " + std::to_string(binomial(dim, grade)) +
                             " coefficients, got " + std::to_string(coeffs_.size()));
    }
}

GradedElement GradedElement::zero(int dim, int grade, Space space) {
    check_dim(dim);
    if (grade < 0 || grade > dim) throw DimensionError("grade outside [0, dim]");
    return GradedElement(dim, grade, std::vector<double>(binomial(dim, grade), 0.0), space);
}

GradedElement GradedElement::blade(const MultiIndex& index, double coefficient, Space space) {
    GradedElement e = zero(index.dim(), index.grade(), space);
    e.coeffs_[basis_position(index)] = coefficient;
    return e;
}

GradedElement GradedElement::scalar(int dim, double value, Space space) {
    return GradedElement(dim, 0, {value}, space);
}

GradedElement GradedElement::vector(std::span<const double> components, Space space) {
    const int dim = static_cast<int>(components.size());
    return GradedElement(dim, 1, std::vector<double>(components.begin(), components.end()), space);
}

GradedElement GradedElement::volume(int dim, Space space) { return GradedElement(dim, dim, {1.0}, space); }

double GradedElement::coefficient(const MultiIndex& index) const {
    if (index.dim() != dim_ || index.grade() != grade_) throw DimensionError("multi-index shape mismatch");
    return coeffs_[basis_position(index)];
}

GradedElement GradedElement::as(Space space) const {
    GradedElement e = *this;
    e.space_ = space;
    return e;
}

bool GradedElement::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

GradedElement& GradedElement::operator+=(const GradedElement& other) {
    require_same_shape(*this, other, "add");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& other) {
    require_same_shape(*this, other, "subtract");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

GradedElement& GradedElement::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    return *this;
}

bool approx_equal(const GradedElement& a, const GradedElement& b, double tol) {
    if (a.dim() != b.dim() || a.grade() != b.grade() || a.space() != b.space()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
}

// --- operations -------------------------------------------------------------

GradedElement wedge(const GradedElement& u, const GradedElement& v) {
    if (u.dim() != v.dim()) {
        throw DimensionError("wedge: dimension mismatch " + std::to_string(u.dim()) + " vs " +
                             std::to_string(v.dim()));
    }
    if (u.space() != v.space()) throw DimensionError("wedge: operands live in different spaces");
    const int n = u.dim();
    const int grade = u.grade() + v.grade();
    if (grade > n) {
        throw GradeOverflowError("wedge: grade " + std::to_string(u.grade()) + " + " +
                                 std::to_string(v.grade()) + " exceeds dimension " + std::to_string(n));
    }
    const auto left = lexicographic_masks(n, u.grade());
    const auto right = lexicographic_masks(n, v.grade());
    std::vector<double> out(binomial(n, grade), 0.0);
    for (std::size_t i = 0; i < left.size(); ++i) {
        if (u[i] == 0.0) continue;
        for (std::size_t j = 0; j < right.size(); ++j) {
            const int sign = merge_sign(left[i], right[j]);
            if (sign == 0) continue;
            out[rank_of_mask(n, left[i] | right[j])] += sign * u[i] * v[j];
        }
    }
    return GradedElement(n, grade, std::move(out), u.space());
}

double scalar_product(const GradedElement& u, const GradedElement& v) {
    require_same_shape(u, v, "scalar_product");
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) sum += u[i] * v[i];
    return sum;
}

double norm(const GradedElement& u) { return std::sqrt(scalar_product(u, u)); }

double normalized_measure(const GradedElement& u, const GradedElement& v) {
    require_same_shape(u, v, "normalized_measure");
    const double nu = norm(u);
    const double nv = norm(v);
    if (nu == 0.0 || nv == 0.0) throw InvalidArgument("normalized_measure: zero argument");
    const double c = scalar_product(u, v) / (nu * nv);
    return std::clamp(c, -1.0, 1.0);
}

GradedElement hodge_dual(const GradedElement& u) {
    const int n = u.dim();
    const auto masks = lexicographic_masks(n, u.grade());
    const std::uint32_t full = full_mask(n);
    std::vector<double> out(binomial(n, n - u.grade()), 0.0);
    for (std::size_t i = 0; i < masks.size(); ++i) {
        const std::uint32_t complement = full ^ masks[i];
        out[rank_of_mask(n, complement)] += merge_sign(masks[i], complement) * u[i];
    }
    return GradedElement(n, n - u.grade(), std::move(out), u.space());
}

double pair_form_vector(const GradedElement& f, const GradedElement& w) {
    if (f.space() != Space::form) throw DimensionError("pair_form_vector: first argument must be a form");
    if (w.space() != Space::vector) throw DimensionError("pair_form_vector: second argument must be a vector");
    require_same_shape(f, w, "pair_form_vector");
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * w[i];
    return sum;
}

GradedElement blade_from_vectors(std::span<const std::vector<double>> vectors) {
    if (vectors.empty()) throw DimensionError("blade_from_vectors: need at least one vector");
    const std::size_t n = vectors.front().size();
    if (vectors.size() > n) throw GradeOverflowError("blade_from_vectors: more vectors than dimensions");
    GradedElement blade = GradedElement::vector(vectors.front());
    for (std::size_t k = 1; k < vectors.size(); ++k) {
        if (vectors[k].size() != n) throw DimensionError("blade_from_vectors: vectors of different length");
        blade = wedge(blade, GradedElement::vector(vectors[k]));
    }
    return blade;
}

} // namespace flowcalc

namespace flowcalc {

namespace {

std::string format_number(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string blade_text(const MultiIndex& index, Space space) {
    if (index.grade() == 0) return "1";
    std::string name = index.to_string();
    return space == Space::form ? "dx" + name.substr(1) : name;
}

class ElementReader {
public:
    ElementReader(std::string_view text, int dim) : text_(text), dim_(dim) {}

    GradedElement read() {
        skip();
        if (pos_ == text_.size()) fail("empty element");
        std::vector<std::pair<MultiIndex, double>> terms;
        std::optional<Space> space;
        bool first = true;
        while (pos_ < text_.size()) {
            double sign = 1.0;
            if (text_[pos_] == '+' || text_[pos_] == '-') {
                sign = text_[pos_] == '-' ? -1.0 : 1.0;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            double coefficient = 1.0;
            bool has_number = false;
            if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
                coefficient = number();
                has_number = true;
                skip();
                if (pos_ < text_.size() && text_[pos_] == '*') {
                    ++pos_;
                    skip();
                } else {
                    terms.emplace_back(MultiIndex(dim_, {}), sign * coefficient);
                    continue;
                }
            }
            Space term_space = Space::vector;
            if (text_.substr(pos_, 2) == "dx") {
                term_space = Space::form;
                pos_ += 2;
            } else if (pos_ < text_.size() && text_[pos_] == 'e') {
                ++pos_;
            } else {
                fail(has_number ? "expected a basis blade after '*'" : "expected a number or basis blade");
            }
            if (space && *space != term_space) fail("cannot mix vector and form terms");
            space = term_space;
            terms.emplace_back(indices(), sign * coefficient);
            skip();
        }
        const int grade = terms.front().first.grade();
        GradedElement result = GradedElement::zero(dim_, grade, space.value_or(Space::vector));
        for (const auto& [index, c] : terms) {
            if (index.grade() != grade) throw DimensionError("element terms have different grades");
            result += GradedElement::blade(index, c, result.space());
        }
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what, 1, static_cast<int>(pos_) + 1);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    double number() {
        double v = 0.0;
        auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (ec != std::errc{}) fail("malformed number");
        pos_ = static_cast<std::size_t>(end - text_.data());
        return v;
    }

    int digits() {
        const std::size_t start = pos_;
        int v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > kMaxExteriorDim) fail("basis index too large");
            ++pos_;
        }
        if (pos_ == start) fail("expected basis index digits");
        return v;
    }

    MultiIndex indices() {
        std::vector<int> idx;
        if (dim_ <= 9) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                idx.push_back(text_[pos_] - '0');
                ++pos_;
            }
            if (pos_ == start) fail("expected basis index digits");
        } else {
            idx.push_back(digits());
            while (pos_ < text_.size() && text_[pos_] == '_') {
                ++pos_;
                idx.push_back(digits());
            }
        }
        try {
            return MultiIndex(dim_, idx);
        } catch (const DimensionError& e) {
            fail(e.what());
        }
    }

    std::string_view text_;
    int dim_;
    std::size_t pos_ = 0;
};

} // namespace

GradedElement parse_element(std::string_view text, int dim) {
    check_dim(dim);
    return ElementReader(text, dim).read();
}

std::string to_string(const GradedElement& u) {
    const auto index = basis(u.dim(), u.grade());
    std::string out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double c = u[i];
        if (c == 0.0) continue;
        const std::string blade = blade_text(index[i], u.space());
        const double mag = std::abs(c);
        std::string term;
        if (blade == "1") term = format_number(mag);
        else if (mag == 1.0) term = blade;
        else term = format_number(mag) + "*" + blade;
        if (out.empty()) out = c < 0 ? "-" + term : term;
        else out += (c < 0 ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

} // namespace flowcalc
