#pragma once

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace driftsign {

/// Locale-independent decimal rendering with 17 significant digits, enough to
/// round-trip any double exactly.
inline std::string format_double(double v) {
  char buf[40];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (res.ec != std::errc{})
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

}  // namespace driftsign
