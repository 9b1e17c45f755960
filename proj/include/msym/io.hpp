#pragma once

// Verification batteries shared by the command-line driver and the
// acceptance suite.  Each battery runs one family of exact (zero-tolerance)
// property checks from a seeded generator and reports the number of checks
// performed; on failure the detail string carries the first witness.

#include <cstdint>
#include <string>
#include <vector>

namespace msym {

struct CheckReport {
    std::string name;
    bool ok = true;
    long checks = 0;
    std::string detail; // first failing witness, empty when ok
};

// trials <= 0 selects each battery's built-in count.

// koszul multiplicativity, reversal sign, unshuffle counts (exhaustive n <= 7)
CheckReport check_signs(std::uint64_t seed, int trials = 0);
// commuting square of the shift against permutation actions, n <= 4
CheckReport check_decalage_naturality(std::uint64_t seed, int trials = 0);
// shift of an antisymmetric insertion against the symmetric insertion
CheckReport check_insertion_compat(std::uint64_t seed, int trials = 0);
// generalized Jacobi identity of the bracket family on multivectors
CheckReport check_gerstenhaber(std::uint64_t seed, int trials = 0);
// the five commutator identities, the derivative decomposition and the
// contraction-order relation
CheckReport check_cartan_calculus(std::uint64_t seed, int trials = 0);
// unshuffle-inserted brackets wedge back to 2^{n-2} times the full bracket
CheckReport check_coalgebra_factor(std::uint64_t seed, int trials = 0);
// d i_x omega == i_{nu_n(x)} omega on words of hamiltonian fields, and
// closure of the hamiltonian class under the brackets
CheckReport check_main_forms(std::uint64_t seed, int trials = 0);
// naive-bracket Jacobi failure witness, bigraded Jacobi on two instances,
// bottom-row closure, strictness of the field and form projections
CheckReport check_bigraded_brackets(std::uint64_t seed, int trials = 0);
// abstract transfer: Jacobi and strict projection on a finite instance and
// a sampled geometric one (element-wise match), witness-choice independence
CheckReport check_transfer(std::uint64_t seed);
// homotopy <-> lift conversions are mutually inverse and the checkers agree;
// a null-homotopy with nonvanishing h e on letters fails the lift check
CheckReport check_roundtrip(std::uint64_t seed);
// the five classical notions agree on the plane instances; the equivalence
// chain holds for the rotation action candidate and its corruptions
CheckReport check_moment(std::uint64_t seed);

// suites runnable from the command line; "all" runs everything in order
std::vector<std::string> suite_names();
std::vector<CheckReport> run_suite(const std::string& suite, std::uint64_t seed, int trials);

std::string report_text(const std::vector<CheckReport>& reports);
std::string report_json(const std::string& suite, std::uint64_t seed,
                        const std::vector<CheckReport>& reports);

} // namespace msym
