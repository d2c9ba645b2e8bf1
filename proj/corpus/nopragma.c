int arr[100];

int main() {
#pragma omp parallel for
  for (int i = 0; i < 100; i++) {
    arr[i] = i;
  }
}
