#pragma once

#include <string>
#include <utility>
#include <vector>

namespace eqbundle {

/// The built-in corpus of small actions, embedded so `selftest` runs without
/// external files. The same files ship under data/.
inline const std::vector<std::pair<std::string, std::string>>& builtin_corpus() {
    static const std::vector<std::pair<std::string, std::string>> corpus = {
        {"d4_d1.action",
         R"ACTION(# D_4 acting through D_1; the kernel is the rotation subgroup Z_4
[group]
name = "D4/D1"
kind = "permutation"
degree = 4
generators = ["(1 2 3 4)", "(2 4)"]
labels = ["r", "f"]

[rho]
dets = [1, -1]
turns = ["0", "0"]
)ACTION"},
        {"d4_d2.action",
         R"ACTION(# D_4 acting through D_2; the kernel is the center
[group]
name = "D4/D2"
kind = "permutation"
degree = 4
generators = ["(1 2 3 4)", "(2 4)"]
labels = ["r", "f"]

[rho]
dets = [1, -1]
turns = ["1/2", "0"]
)ACTION"},
        {"d4_standard.action",
         R"ACTION(# dihedral group of order 8 acting faithfully
[group]
name = "D4 standard"
kind = "permutation"
degree = 4
generators = ["(1 2 3 4)", "(2 4)"]
labels = ["r", "f"]

[rho]
dets = [1, -1]
turns = ["1/4", "0"]
)ACTION"},
        {"d5_standard.action",
         R"ACTION(# dihedral group of order 10 acting faithfully (odd n)
[group]
name = "D5 standard"
kind = "permutation"
degree = 5
generators = ["(1 2 3 4 5)", "(2 5)(3 4)"]
labels = ["r", "f"]

[rho]
dets = [1, -1]
turns = ["1/5", "0"]
)ACTION"},
        {"d6_skew.action",
         R"ACTION(# D_6 with both generators acting as reflections: image D_2, kernel Z_3;
# one orbit has isotropy image D_1 realized by the reflection through i
[group]
name = "D6 skew"
kind = "permutation"
degree = 6
generators = ["(1 2 3 4 5 6)", "(2 6)(3 5)"]
labels = ["r", "f"]

[rho]
dets = [-1, -1]
turns = ["1/2", "0"]
)ACTION"},
        {"d6_standard.action",
         R"ACTION(# dihedral group of order 12 acting faithfully
[group]
name = "D6 standard"
kind = "permutation"
degree = 6
generators = ["(1 2 3 4 5 6)", "(2 6)(3 5)"]
labels = ["r", "f"]

[rho]
dets = [1, -1]
turns = ["1/6", "0"]
)ACTION"},
        {"q8_d2.action",
         R"ACTION(# quaternion group acting through D_2; the kernel is the center
[group]
name = "Q8/D2"
kind = "permutation"
degree = 8
generators = ["(1 2 5 6)(3 4 7 8)", "(1 3 5 7)(2 8 6 4)"]
labels = ["i", "j"]

[rho]
dets = [1, -1]
turns = ["1/2", "0"]
)ACTION"},
        {"q8_rotation.action",
         R"ACTION(# quaternion group acting through rotations only: kernel <i>
[group]
name = "Q8 rotations"
kind = "permutation"
degree = 8
generators = ["(1 2 5 6)(3 4 7 8)", "(1 3 5 7)(2 8 6 4)"]
labels = ["i", "j"]

[rho]
dets = [1, 1]
turns = ["0", "1/2"]
)ACTION"},
        {"s3_sign.action",
         R"ACTION(# S_3 acting through the sign map: image D_1, kernel A_3
[group]
name = "S3 sign"
kind = "permutation"
degree = 3
generators = ["(1 2 3)", "(1 2)"]
labels = ["r", "t"]

[rho]
dets = [1, -1]
turns = ["0", "0"]
)ACTION"},
        {"s3_standard.action",
         R"ACTION(# S_3 = D_3 acting faithfully
[group]
name = "S3 standard"
kind = "permutation"
degree = 3
generators = ["(1 2 3)", "(1 2)"]
labels = ["r", "t"]

[rho]
dets = [1, -1]
turns = ["1/3", "0"]
)ACTION"},
        {"z1_trivial.action",
         R"ACTION(# trivial group, trivial action: every fiber is fixed
[group]
name = "Z1"
kind = "cayley"
order = 1
table = [0]
generators = []

[rho]
dets = []
turns = []
)ACTION"},
        {"z2_reflection.action",
         R"ACTION(# order-2 group acting by the x-axis reflection: image D_1
[group]
name = "Z2/D1"
kind = "permutation"
degree = 2
generators = ["(1 2)"]
labels = ["t"]

[rho]
dets = [-1]
turns = ["0"]
)ACTION"},
        {"z2_rotation.action",
         R"ACTION(# order-2 rotation group (Cayley-table input form)
[group]
name = "Z2 rotations"
kind = "cayley"
order = 2
table = [0, 1, 1, 0]
generators = [1]

[rho]
dets = [1]
turns = ["1/2"]
)ACTION"},
        {"z2z2_d1.action",
         R"ACTION(# Klein four-group with an order-2 kernel: image D_1
[group]
name = "Z2xZ2/D1"
kind = "permutation"
degree = 4
generators = ["(1 2)", "(3 4)"]
labels = ["a", "b"]

[rho]
dets = [-1, 1]
turns = ["0", "0"]
)ACTION"},
        {"z2z2_d2.action",
         R"ACTION(# Klein four-group acting faithfully: image D_2, abelian case
[group]
name = "Z2xZ2/D2"
kind = "permutation"
degree = 4
generators = ["(1 2)", "(3 4)"]
labels = ["a", "b"]

[rho]
dets = [1, -1]
turns = ["1/2", "0"]
)ACTION"},
        {"z3_rotation.action",
         R"ACTION(# cyclic group of order 3 acting by rotations
[group]
name = "Z3 rotations"
kind = "permutation"
degree = 3
generators = ["(1 2 3)"]
labels = ["a"]

[rho]
dets = [1]
turns = ["1/3"]
)ACTION"},
        {"z4_halfturn.action",
         R"ACTION(# Z_4 acting through its order-2 quotient: kernel of order 2
[group]
name = "Z4 half-turn"
kind = "permutation"
degree = 4
generators = ["(1 2 3 4)"]
labels = ["a"]

[rho]
dets = [1]
turns = ["1/2"]
)ACTION"},
        {"z4_rotation.action",
         R"ACTION(# cyclic group of order 4 acting by rotations
[group]
name = "Z4 rotations"
kind = "permutation"
degree = 4
generators = ["(1 2 3 4)"]
labels = ["a"]

[rho]
dets = [1]
turns = ["1/4"]
)ACTION"},
        {"z4sz4_d1.action",
         R"ACTION(# Z_4 semidirect Z_4 acting through D_1; kernel <a, b^2> of order 8
[group]
name = "Z4:Z4/D1"
kind = "permutation"
degree = 16
generators = ["(1 5 9 13)(2 6 10 14)(3 7 11 15)(4 8 12 16)", "(1 2 3 4)(5 14 7 16)(9 10 11 12)(6 15 8 13)"]
labels = ["a", "b"]

[rho]
dets = [1, -1]
turns = ["0", "0"]
)ACTION"},
        {"z4sz4_rotation.action",
         R"ACTION(# Z_4 semidirect Z_4 (b a b^-1 = a^-1) acting through rotations; kernel <a>
[group]
name = "Z4:Z4 rotations"
kind = "permutation"
degree = 16
generators = ["(1 5 9 13)(2 6 10 14)(3 7 11 15)(4 8 12 16)", "(1 2 3 4)(5 14 7 16)(9 10 11 12)(6 15 8 13)"]
labels = ["a", "b"]

[rho]
dets = [1, 1]
turns = ["0", "1/4"]
)ACTION"},
        {"z5_rotation.action",
         R"ACTION(# cyclic group of order 5 acting by rotations
[group]
name = "Z5 rotations"
kind = "permutation"
degree = 5
generators = ["(1 2 3 4 5)"]
labels = ["a"]

[rho]
dets = [1]
turns = ["1/5"]
)ACTION"},
        {"z6_rotation.action",
         R"ACTION(# cyclic group of order 6 acting by rotations
[group]
name = "Z6 rotations"
kind = "permutation"
degree = 6
generators = ["(1 2 3 4 5 6)"]
labels = ["a"]

[rho]
dets = [1]
turns = ["1/6"]
)ACTION"},
        {"z7_rotation.action",
         R"ACTION(# cyclic group of order 7 acting by rotations
[group]
name = "Z7 rotations"
kind = "permutation"
degree = 7
generators = ["(1 2 3 4 5 6 7)"]
labels = ["a"]

[rho]
dets = [1]
turns = ["1/7"]
)ACTION"},
        {"z8_rotation.action",
         R"ACTION(# cyclic group of order 8 acting by rotations
[group]
name = "Z8 rotations"
kind = "permutation"
degree = 8
generators = ["(1 2 3 4 5 6 7 8)"]
labels = ["a"]

[rho]
dets = [1]
turns = ["1/8"]
)ACTION"},
    };
    return corpus;
}

}  // namespace eqbundle
