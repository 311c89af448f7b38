unsigned int gcd(unsigned int a, unsigned int b) {
  while (b != 0u) {
    unsigned int t = b;
    b = a % b;
    a = t;
  }
  return a;
}
