int select3(short a, short b, short c) {
  int m = a;
  if (b > m) {
    m = b;
  }
  if (c > m) {
    m = c;
  }
  if (m < 0) {
    m = -m;
  } else {
    m = m + 1;
  }
  return m;
}
