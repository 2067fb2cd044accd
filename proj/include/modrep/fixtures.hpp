#pragma once

// Built-in instances: O_l chains, the two-vertex quiver algebra, the
// three-module local ring O_1[x,y]/(x^2,y^2,xy), matrix modules for
// GL_n(F_q)/GL_n(O_l), and a two-vertex cycle algebra.

#include "modrep/algebra.hpp"

namespace modrep::fix {

alg::Ring ringOl(i64 p, int l);
alg::RModule moduleOi(const alg::Ring& Ol, int i);  // O_i as an O_l-module

alg::Ring ringQuiver(i64 q);  // k<v1,v2,e>, e = v2 e v1, paths of length >= 2 vanish
alg::RModule quiverM1(const alg::Ring& R);
alg::RModule quiverM2(const alg::Ring& R);

alg::Ring ringThreeMod(i64 p);                        // O_1[x,y]/(x^2,y^2,xy)
alg::RModule threeModM(const alg::Ring& R, int which);  // 1: R, 2: R/(x), 3: R/(x,y)

alg::Ring ringCycle2(i64 q);  // two vertices, arrows both ways, radical square zero
alg::RModule cycle2M(const alg::Ring& R, int which);

alg::RModule modulePow(const alg::RModule& M, int n);
alg::RModule freeModule(const alg::Ring& R, int n);

}  // namespace modrep::fix
