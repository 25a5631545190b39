#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "galton/rng.hpp"

namespace galton {

using Complex = std::complex<double>;

/// Hard cap on register width; may be lowered via GALTON_MAX_QUBITS.
int max_qubits();

/// Dense statevector over n qubits.
///
/// Bit convention: qubit 0 is the MOST significant bit of the basis-state
/// integer label. With this ordering Z on qubit j has a diagonal sign
/// pattern of period 2^(n-j), and the least significant qubit is qubit n-1.
struct State {
    int n = 0;
    std::vector<Complex> amps;

    State() = default;
    explicit State(int n_qubits);

    std::size_t dim() const { return amps.size(); }
    double norm_sq() const;
};

/// |x> on n qubits. Throws std::out_of_range for x outside [0, 2^n).
State basis_state(int n, uint64_t x);

// -- single-qubit / two-qubit gates ------------------------------------------

void apply_hadamard(State& s, int q);
void apply_x(State& s, int q);
void apply_z(State& s, int q);
/// Phase gate diag(1, e^{i*lambda}) on qubit q.
void apply_u1(State& s, int q, double lambda);
/// Controlled phase: e^{i*lambda} on the |11> component. ctrl != tgt.
void apply_cu1(State& s, int ctrl, int tgt, double lambda);
void apply_swap(State& s, int q1, int q2);

// -- QFT and Fourier-space adders --------------------------------------------

/// QFT over qubits [0, width): |x> -> 2^{-w/2} sum_y e^{2 pi i x y / 2^w} |y>.
/// Bit-reversal swaps are internal; width <= s.n (default: whole register).
void qft(State& s, int width = -1);
void iqft(State& s, int width = -1);

/// Phase angles for the Fourier-space adder +d over a width-w register:
/// (qubit, angle) pairs with identity rotations (angle = 0 mod 2 pi for
/// integer d) elided.
std::vector<std::pair<int, double>> fourier_add_angles(double d, int width);

/// Adder +d in Fourier space: after qft / fourier_add(d) / iqft the register
/// holds |x+d mod 2^w> for integer d. Caller is responsible for the register
/// actually being in Fourier space.
void fourier_add(State& s, double d, int width = -1);

/// Controlled adder: +d applied iff ctrl reads 1. ctrl must lie outside
/// [0, width). Rotations with angle = 0 mod 2 pi are elided.
void ctrl_fourier_add(State& s, int ctrl, double d, int width = -1);

// -- register growth ---------------------------------------------------------

/// Appends a |+> qubit as the new least significant qubit:
/// amp'(2x) = amp'(2x+1) = amp(x)/sqrt(2).
State append_plus_qubit(const State& s);

/// Appends a |0> qubit as the new least significant qubit.
State append_zero_qubit(const State& s);

/// Inserts a |+> qubit at qubit index pos (0 = most significant end,
/// s.n = least significant end).
State insert_plus_qubit(const State& s, int pos);

// -- measurement -------------------------------------------------------------

/// Born probability of reading `bit` on qubit q.
double prob_of(const State& s, int q, int bit);

/// Deterministic collapse onto outcome `bit` (renormalized). Throws if the
/// outcome has zero probability.
State project(const State& s, int q, int bit);

/// Samples qubit q via rng, collapses and renormalizes in place.
int measure_qubit(State& s, int q, Rng& rng);

// -- debugging ---------------------------------------------------------------

/// CSV dump: index,re,im,prob (one row per basis state).
std::string amplitudes_csv(const State& s);

} // namespace galton
