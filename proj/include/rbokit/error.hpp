#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbokit {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateItem : public Error {
 public:
  explicit DuplicateItem(std::string id)
      : Error("duplicate item '" + id + "' in ranking"), id_(std::move(id)) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class EmptyRanking : public Error {
 public:
  EmptyRanking() : Error("ranking has no items") {}
};

class DepthOutOfRange : public Error {
 public:
  using Error::Error;
};

// The tie-unaware agreement was asked for a depth that splits a tie group.
class CrossingGroupAtDepth : public Error {
 public:
  explicit CrossingGroupAtDepth(std::size_t depth)
      : Error("a tie group crosses depth " + std::to_string(depth) +
              "; the base variant requires untied prefixes"),
        depth_(depth) {}
  std::size_t depth() const noexcept { return depth_; }

 private:
  std::size_t depth_;
};

class InvalidPersistence : public Error {
 public:
  explicit InvalidPersistence(double p)
      : Error("persistence must lie in (0, 1), got " + std::to_string(p)) {}
};

class TooManyPermutations : public Error {
 public:
  using Error::Error;
};

class UndefinedCorrelation : public Error {
 public:
  using Error::Error;
};

class NotConjoint : public Error {
 public:
  NotConjoint() : Error("rankings do not contain the same items") {}
};

class HasTies : public Error {
 public:
  HasTies() : Error("ranking contains ties") {}
};

class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line, const std::string& why)
      : Error("line " + std::to_string(line) + ": " + why), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateDoc : public Error {
 public:
  DuplicateDoc(const std::string& topic, const std::string& doc)
      : Error("document '" + doc + "' appears twice for topic '" + topic + "'") {}
};

class EmptyRun : public Error {
 public:
  EmptyRun() : Error("run file contains no entries") {}
};

class UnknownTopic : public Error {
 public:
  explicit UnknownTopic(const std::string& topic) : Error("unknown topic '" + topic + "'") {}
};

}  // namespace rbokit
