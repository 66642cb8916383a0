#pragma once

#include <string>
#include <variant>

#include "vekua/grid.hpp"
#include "vekua/vekua2d.hpp"

namespace vekua {

// "VFLD v1" text format.
//
//   vfld 1
//   rank scalar|vector|biquat|complex2d
//   origin x y z
//   extent x y z
//   res n1 n2 n3
//   <2*components floats per line, re im per component, x-fastest node order>
//
// complex2d uses n3 = 1 and zero z origin/extent.  Values are written with
// 17 significant digits; round trips reproduce fields to better than 1e-15
// relative.

using VfldField = std::variant<ScalarField, VectorField, BiquaternionField,
                               plane::ComplexField2D>;

void write_vfld(const std::string& path, const ScalarField& f);
void write_vfld(const std::string& path, const VectorField& f);
void write_vfld(const std::string& path, const BiquaternionField& f);
void write_vfld(const std::string& path, const plane::ComplexField2D& f);

/// Throws VfldError on malformed / unreadable / non-finite content.
VfldField read_vfld(const std::string& path);

ScalarField read_scalar_vfld(const std::string& path);
VectorField read_vector_vfld(const std::string& path);
BiquaternionField read_biquat_vfld(const std::string& path);
plane::ComplexField2D read_complex2d_vfld(const std::string& path);

} // namespace vekua
