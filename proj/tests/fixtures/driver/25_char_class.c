int char_class(char c) {
  int k = 0;
  if (c >= 'a' && c <= 'z') {
    k = 1;
  } else if (c >= 'A' && c <= 'Z') {
    k = 2;
  } else if (c >= '0' || c == '_') {
    k = 3;
  }
  return k;
}
