#pragma once

// Opaque, instantiation-owned payloads for base-type values, abstract
// base-type values and AI-states.

#include <memory>
#include <string>
#include <typeindex>
#include <typeinfo>

#include "skelai/error.hpp"

namespace skel {

class Datum {
 public:
  virtual ~Datum() = default;

  /// Total order; payloads of different dynamic types order by type.
  virtual int compare(const Datum& other) const = 0;
  virtual std::string render() const = 0;
  virtual std::type_index type() const = 0;
};

using DatumPtr = std::shared_ptr<const Datum>;

inline int compare(const Datum& a, const Datum& b) { return a.compare(b); }

namespace detail {
template <class T>
std::string render_payload(const T& v) {
  return render(v);
}
}  // namespace detail

/// Payload types must provide `operator<` and an ADL-visible
/// `std::string render(const T&)`.
template <class T>
class BoxedDatum final : public Datum {
 public:
  explicit BoxedDatum(T value) : value_(std::move(value)) {}

  const T& value() const { return value_; }

  int compare(const Datum& other) const override {
    if (other.type() != type()) return type() < other.type() ? -1 : 1;
    const T& rhs = static_cast<const BoxedDatum<T>&>(other).value_;
    if (value_ < rhs) return -1;
    if (rhs < value_) return 1;
    return 0;
  }
  std::string render() const override { return detail::render_payload(value_); }
  std::type_index type() const override { return typeid(T); }

 private:
  T value_;
};

template <class T>
DatumPtr box(T value) {
  return std::make_shared<const BoxedDatum<T>>(std::move(value));
}

template <class T>
const T& unbox(const Datum& d) {
  if (d.type() != typeid(T)) fail(ErrorKind::TypeMismatch, "unexpected payload " + d.render());
  return static_cast<const BoxedDatum<T>&>(d).value();
}

template <class T>
bool holds(const Datum& d) {
  return d.type() == typeid(T);
}

}  // namespace skel
