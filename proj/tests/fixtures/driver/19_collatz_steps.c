int collatz_steps(unsigned int n) {
  int steps = 0;
  while (n > 1u && steps < 64) {
    if ((n & 1u) == 0u) {
      n = n / 2u;
    } else {
      n = n * 3u + 1u;
    }
    steps++;
  }
  return steps;
}
