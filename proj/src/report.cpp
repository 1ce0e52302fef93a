#include "sqz/report.hpp"

#include <cstdio>
#include <sstream>

#include "sqz/linalg.hpp"
#include "sqz/xi_io.hpp"

namespace sqz {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(cplx z) { return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i"; }

void print_matrix(std::ostringstream& out, const char* name, const ComplexMatrix& m) {
  out << name << " =\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << fmt(m(i, j));
    out << "]\n";
  }
}

// xi = r e^{i phi} [[0,1],[1,0]] up to rounding.
std::optional<double> two_mode_magnitude(const ComplexMatrix& xi) {
  if (xi.rows() != 2) return std::nullopt;
  const double scale = 1e-10 * (1.0 + frobenius_norm(xi));
  if (std::abs(xi(0, 0)) > scale || std::abs(xi(1, 1)) > scale) return std::nullopt;
  if (std::abs(xi(0, 1) - xi(1, 0)) > scale) return std::nullopt;
  return std::abs(xi(0, 1));
}

}  // namespace

ImproprietyReport report_impropriety(const SqueezingSpec& spec, double sigma2) {
  ImproprietyReport rep;
  rep.d = spec.dim();
  rep.singular_values = svd(spec.xi()).d;
  const PolarForm polar = polar_decompose(spec.xi());
  rep.r_norm = eig_hermitian(polar.r_part).values.front();
  rep.moments = analytic_moments(polar, sigma2);
  rep.det_gamma = determinant(rep.moments.gamma);
  rep.det_c = determinant(rep.moments.c);
  rep.impropriety = impropriety(rep.moments);
  rep.two_mode_r = two_mode_magnitude(spec.xi());
  if (rep.two_mode_r) rep.separability = separability_threshold(sigma2, *rep.two_mode_r);
  return rep;
}

ImproprietyReport report_impropriety(const std::filesystem::path& xi_file, double sigma2) {
  return report_impropriety(load_xi_file(xi_file), sigma2);
}

std::string ImproprietyReport::to_text() const {
  std::ostringstream out;
  out << "d = " << d << "\n";
  out << "sigma2 = " << fmt(moments.sigma2) << "\n";
  out << "singular values =";
  for (double s : singular_values) out << ' ' << fmt(s);
  out << "\n";
  out << "||R|| = " << fmt(r_norm) << "\n";
  print_matrix(out, "Gamma", moments.gamma);
  print_matrix(out, "C", moments.c);
  out << "det Gamma = " << fmt(det_gamma) << "\n";
  out << "det C = " << fmt(det_c) << "\n";
  out << "impropriety = " << fmt(impropriety) << "\n";
  if (separability) {
    out << "two-mode r = " << fmt(*two_mode_r) << "\n";
    out << "separability threshold r = " << fmt(separability->threshold_r) << "\n";
    out << "verdict = " << (separability->entangled ? "entangled" : "separable") << "\n";
  }
  return out.str();
}

}  // namespace sqz
