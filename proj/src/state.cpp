#include "galton/state.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace galton {

namespace {

constexpr double kPi = std::numbers::pi;

void check_qubit(const State& s, int q, const char* what) {
    if (q < 0 || q >= s.n)
        throw std::out_of_range(std::string(what) + ": qubit index out of range");
}

// Bit position (from the least significant end) of qubit q under the
// MSB-first labeling convention.
inline int bitpos(const State& s, int q) { return s.n - 1 - q; }

} // namespace

int max_qubits() {
    static const int cap = [] {
        int v = 24;
        if (const char* env = std::getenv("GALTON_MAX_QUBITS")) {
            int parsed = std::atoi(env);
            if (parsed >= 1) v = parsed;
        }
        return v;
    }();
    return cap;
}

State::State(int n_qubits) : n(n_qubits) {
    if (n_qubits < 1 || n_qubits > max_qubits())
        throw std::invalid_argument("State: qubit count out of range");
    amps.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
}

double State::norm_sq() const {
    double acc = 0.0;
    for (const auto& a : amps) acc += std::norm(a);
    return acc;
}

State basis_state(int n, uint64_t x) {
    State s(n);
    if (x >= s.dim()) throw std::out_of_range("basis_state: label out of range");
    s.amps[x] = Complex{1.0, 0.0};
    return s;
}

void apply_hadamard(State& s, int q) {
    check_qubit(s, q, "apply_hadamard");
    const std::size_t half = std::size_t{1} << bitpos(s, q);
    const std::size_t stride = half << 1;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t base = 0; base < s.dim(); base += stride) {
        for (std::size_t i = 0; i < half; ++i) {
            Complex a = s.amps[base + i];
            Complex b = s.amps[base + i + half];
            s.amps[base + i] = (a + b) * inv_sqrt2;
            s.amps[base + i + half] = (a - b) * inv_sqrt2;
        }
    }
}

void apply_x(State& s, int q) {
    check_qubit(s, q, "apply_x");
    const std::size_t mask = std::size_t{1} << bitpos(s, q);
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (!(i & mask)) std::swap(s.amps[i], s.amps[i | mask]);
}

void apply_z(State& s, int q) {
    check_qubit(s, q, "apply_z");
    const std::size_t mask = std::size_t{1} << bitpos(s, q);
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (i & mask) s.amps[i] = -s.amps[i];
}

void apply_u1(State& s, int q, double lambda) {
    check_qubit(s, q, "apply_u1");
    const std::size_t mask = std::size_t{1} << bitpos(s, q);
    const Complex phase = std::polar(1.0, lambda);
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (i & mask) s.amps[i] *= phase;
}

void apply_cu1(State& s, int ctrl, int tgt, double lambda) {
    check_qubit(s, ctrl, "apply_cu1");
    check_qubit(s, tgt, "apply_cu1");
    if (ctrl == tgt) throw std::invalid_argument("apply_cu1: ctrl == tgt");
    const std::size_t mask =
        (std::size_t{1} << bitpos(s, ctrl)) | (std::size_t{1} << bitpos(s, tgt));
    const Complex phase = std::polar(1.0, lambda);
    for (std::size_t i = 0; i < s.dim(); ++i)
        if ((i & mask) == mask) s.amps[i] *= phase;
}

void apply_swap(State& s, int q1, int q2) {
    check_qubit(s, q1, "apply_swap");
    check_qubit(s, q2, "apply_swap");
    if (q1 == q2) return;
    const std::size_t m1 = std::size_t{1} << bitpos(s, q1);
    const std::size_t m2 = std::size_t{1} << bitpos(s, q2);
    for (std::size_t i = 0; i < s.dim(); ++i)
        if ((i & m1) && !(i & m2)) std::swap(s.amps[i], s.amps[(i ^ m1) | m2]);
}

namespace {

int resolve_width(const State& s, int width, const char* what) {
    if (width < 0) return s.n;
    if (width < 1 || width > s.n)
        throw std::out_of_range(std::string(what) + ": register width out of range");
    return width;
}

void qft_impl(State& s, int w, bool inverse) {
    if (!inverse) {
        for (int i = 0; i < w; ++i) {
            apply_hadamard(s, i);
            for (int j = i + 1; j < w; ++j)
                apply_cu1(s, j, i, kPi / static_cast<double>(1 << (j - i)));
        }
        for (int i = 0; i < w / 2; ++i) apply_swap(s, i, w - 1 - i);
    } else {
        for (int i = 0; i < w / 2; ++i) apply_swap(s, i, w - 1 - i);
        for (int i = w - 1; i >= 0; --i) {
            for (int j = w - 1; j > i; --j)
                apply_cu1(s, j, i, -kPi / static_cast<double>(1 << (j - i)));
            apply_hadamard(s, i);
        }
    }
}

} // namespace

void qft(State& s, int width) { qft_impl(s, resolve_width(s, width, "qft"), false); }
void iqft(State& s, int width) { qft_impl(s, resolve_width(s, width, "iqft"), true); }

std::vector<std::pair<int, double>> fourier_add_angles(double d, int width) {
    std::vector<std::pair<int, double>> out;
    const bool integral = d == std::floor(d);
    for (int q = 0; q < width; ++q) {
        const double denom = static_cast<double>(std::size_t{1} << (q + 1));
        if (integral) {
            // angle is a multiple of 2*pi exactly when 2^(q+1) divides d
            const auto id = static_cast<long long>(d);
            const long long p = 1ll << (q + 1);
            if (id % p == 0) continue;
            out.emplace_back(q, 2.0 * kPi * static_cast<double>(id % p) / denom);
        } else {
            out.emplace_back(q, 2.0 * kPi * d / denom);
        }
    }
    return out;
}

void fourier_add(State& s, double d, int width) {
    const int w = resolve_width(s, width, "fourier_add");
    for (const auto& [q, lambda] : fourier_add_angles(d, w)) apply_u1(s, q, lambda);
}

void ctrl_fourier_add(State& s, int ctrl, double d, int width) {
    const int w = resolve_width(s, width, "ctrl_fourier_add");
    check_qubit(s, ctrl, "ctrl_fourier_add");
    if (ctrl < w)
        throw std::invalid_argument("ctrl_fourier_add: control inside the target register");
    for (const auto& [q, lambda] : fourier_add_angles(d, w)) apply_cu1(s, ctrl, q, lambda);
}

State insert_plus_qubit(const State& s, int pos) {
    if (pos < 0 || pos > s.n) throw std::out_of_range("insert_plus_qubit: bad position");
    if (s.n + 1 > max_qubits()) throw std::length_error("insert_plus_qubit: capacity");
    State out(s.n + 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const int low_bits = s.n - pos; // bits below the inserted qubit
    const std::size_t low_mask = (std::size_t{1} << low_bits) - 1;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const std::size_t hi = (i & ~low_mask) << 1;
        const std::size_t lo = i & low_mask;
        const Complex v = s.amps[i] * inv_sqrt2;
        out.amps[hi | lo] = v;
        out.amps[hi | (std::size_t{1} << low_bits) | lo] = v;
    }
    return out;
}

State append_plus_qubit(const State& s) { return insert_plus_qubit(s, s.n); }

State append_zero_qubit(const State& s) {
    if (s.n + 1 > max_qubits()) throw std::length_error("append_zero_qubit: capacity");
    State out(s.n + 1);
    for (std::size_t i = 0; i < s.dim(); ++i) out.amps[i << 1] = s.amps[i];
    return out;
}

double prob_of(const State& s, int q, int bit) {
    check_qubit(s, q, "prob_of");
    const std::size_t mask = std::size_t{1} << bitpos(s, q);
    double p = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (((i & mask) != 0) == (bit != 0)) p += std::norm(s.amps[i]);
    return p;
}

State project(const State& s, int q, int bit) {
    const double p = prob_of(s, q, bit);
    if (p <= 0.0) throw std::runtime_error("project: zero-probability outcome");
    const std::size_t mask = std::size_t{1} << bitpos(s, q);
    const double scale = 1.0 / std::sqrt(p);
    State out = s;
    for (std::size_t i = 0; i < out.dim(); ++i) {
        if (((i & mask) != 0) == (bit != 0))
            out.amps[i] *= scale;
        else
            out.amps[i] = Complex{0.0, 0.0};
    }
    return out;
}

int measure_qubit(State& s, int q, Rng& rng) {
    const double p0 = prob_of(s, q, 0);
    const int bit = rng.uniform() < p0 ? 0 : 1;
    s = project(s, q, bit);
    return bit;
}

std::string amplitudes_csv(const State& s) {
    std::ostringstream os;
    os.precision(17);
    os << "index,re,im,prob\n";
    for (std::size_t i = 0; i < s.dim(); ++i)
        os << i << ',' << s.amps[i].real() << ',' << s.amps[i].imag() << ','
           << std::norm(s.amps[i]) << '\n';
    return os.str();
}

} // namespace galton
