#include "hypdyn/hypgeo.hpp"

#include <cmath>
#include <sstream>

namespace hypdyn {

SurfaceModel SurfaceModel::annulus(double inner_radius) {
  if (!(inner_radius > 0.0 && inner_radius < 1.0)) {
    std::ostringstream msg;
    msg << "annulus inner radius must lie in (0,1), got " << inner_radius;
    throw UsageError(msg.str());
  }
  return SurfaceModel(SurfaceKind::Annulus, inner_radius);
}

double SurfaceModel::strip_height() const {
  if (kind_ != SurfaceKind::Annulus) throw UsageError("strip height is defined for annuli only");
  return -std::log(inner_radius_);
}

bool SurfaceModel::contains(Point z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  const double m = std::abs(z);
  switch (kind_) {
    case SurfaceKind::Disk:
      return m < 1.0;
    case SurfaceKind::HalfPlane:
      return z.imag() > 0.0;
    case SurfaceKind::PuncturedDisk:
      return m > 0.0 && m < 1.0;
    case SurfaceKind::Annulus:
      return m > inner_radius_ && m < 1.0;
  }
  return false;
}

bool SurfaceModel::contains_with_slack(Point z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  const double m = std::abs(z);
  switch (kind_) {
    case SurfaceKind::Disk:
      return m < 1.0 + kMembershipSlack;
    case SurfaceKind::HalfPlane:
      return z.imag() > -kMembershipSlack;
    case SurfaceKind::PuncturedDisk:
      return m > 0.0 && m < 1.0 + kMembershipSlack;
    case SurfaceKind::Annulus:
      return m > inner_radius_ - kMembershipSlack && m < 1.0 + kMembershipSlack;
  }
  return false;
}

void SurfaceModel::require(Point z, const char* what) const {
  if (contains(z)) return;
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " (" << z.real() << ", " << z.imag() << ") is not on the " << name();
  throw DomainError(msg.str());
}

Point SurfaceModel::base_point() const {
  switch (kind_) {
    case SurfaceKind::Disk:
      return {0.0, 0.0};
    case SurfaceKind::HalfPlane:
      return {0.0, 1.0};
    case SurfaceKind::PuncturedDisk:
      return {0.5, 0.0};
    case SurfaceKind::Annulus:
      return {std::sqrt(inner_radius_), 0.0};
  }
  return {};
}

std::string SurfaceModel::name() const {
  switch (kind_) {
    case SurfaceKind::Disk:
      return "disk";
    case SurfaceKind::HalfPlane:
      return "half-plane";
    case SurfaceKind::PuncturedDisk:
      return "punctured-disk";
    case SurfaceKind::Annulus:
      return "annulus";
  }
  return "?";
}

SurfaceModel SurfaceModel::from_name(const std::string& name, double inner_radius) {
  if (name == "disk") return disk();
  if (name == "half-plane") return half_plane();
  if (name == "punctured-disk") return punctured_disk();
  if (name == "annulus") return annulus(inner_radius);
  throw UsageError("unknown surface '" + name + "'");
}

}  // namespace hypdyn
